//! Exact arithmetic: rationals, Hirzebruch-Jung continued fractions and
//! determinants of tree-shaped intersection matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{intersection_matrix, PlumbingGraph};

/// Exact fraction in lowest terms with positive denominator. Displays as
/// `p/q`, or `p` when `q = 1`, and parses from the same form.
pub type Rational = BigRational;

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational, HjError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| HjError::Parse(s.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HjError {
    #[error("continued fraction must have at least one entry")]
    Empty,
    #[error("continued fraction tail starting at entry {0} evaluates to zero")]
    ZeroTail(usize),
    #[error("zero has no Hirzebruch-Jung expansion")]
    ZeroValue,
    #[error("expansion entry does not fit in 64 bits")]
    Overflow,
    #[error("cannot parse `{0}` as a rational p/q")]
    Parse(String),
}

/// A Hirzebruch-Jung continued fraction `[a1, ..., ak]` standing for
/// `a1 - 1/(a2 - 1/(... - 1/ak))`. Every proper tail is nonzero, so the
/// value is always defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HJExpansion {
    entries: Vec<i64>,
}

impl HJExpansion {
    pub fn new(entries: Vec<i64>) -> Result<Self, HjError> {
        evaluate(&entries)?;
        Ok(HJExpansion { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self) -> Rational {
        evaluate(&self.entries).expect("validated at construction")
    }
}

impl std::fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

fn evaluate(entries: &[i64]) -> Result<Rational, HjError> {
    let (&last, rest) = entries.split_last().ok_or(HjError::Empty)?;
    // tail = num/den, reduced only at the end
    let (mut num, mut den) = (BigInt::from(last), BigInt::one());
    for (i, &a) in rest.iter().enumerate().rev() {
        if num.is_zero() {
            return Err(HjError::ZeroTail(i + 1));
        }
        let next = BigInt::from(a) * &num - den;
        den = num;
        num = next;
    }
    Ok(Rational::new(num, den))
}

pub fn hj_value(x: &HJExpansion) -> Rational {
    x.value()
}

/// The canonical expansion: `a1 = ⌊r⌋` (so `a1 = r` for integers) and the
/// tail expands `-1/(r - a1)`. Each tail has a strictly smaller denominator,
/// so the recursion ends. For `r < -1` every entry is at most `-2`; for
/// `-1 < r < 0` the expansion starts with `-1`.
pub fn hj_expand(r: &Rational) -> Result<HJExpansion, HjError> {
    if r.is_zero() {
        return Err(HjError::ZeroValue);
    }
    let mut entries = Vec::new();
    let (mut p, mut q) = (r.numer().clone(), r.denom().clone());
    loop {
        let (a, rem) = p.div_mod_floor(&q);
        entries.push(a.to_i64().ok_or(HjError::Overflow)?);
        if rem.is_zero() {
            break;
        }
        // -1/(p/q - a) = -q/rem
        p = -q;
        q = rem;
    }
    Ok(HJExpansion { entries })
}

/// Determinant of the intersection matrix by leaf elimination: repeatedly
/// take the first remaining leaf, multiply its current diagonal entry into
/// the product and add `-1/entry` to its neighbour. A zero entry at a leaf
/// that still has a neighbour stops the elimination; the fraction-free
/// generic routine takes over in that case.
pub fn tree_determinant(g: &PlumbingGraph) -> BigInt {
    match leaf_elimination(g) {
        Some(det) => det,
        None => bareiss_determinant(&int_matrix(g)),
    }
}

fn leaf_elimination(g: &PlumbingGraph) -> Option<BigInt> {
    let n = g.len();
    let mut entry: Vec<Rational> = g
        .weights()
        .iter()
        .map(|&w| Rational::from_integer(w.into()))
        .collect();
    let mut degree: Vec<usize> = (0..n).map(|v| g.valence(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut product = Rational::one();

    for remaining in (1..=n).rev() {
        let v = leaves.pop_first().expect("a finite tree always has a leaf");
        removed[v] = true;
        if remaining == 1 {
            product *= &entry[v];
            break;
        }
        if entry[v].is_zero() {
            return None;
        }
        product *= &entry[v];
        let parent = *g
            .neighbors(v)
            .iter()
            .find(|&&u| !removed[u])
            .expect("leaf has one live neighbour");
        let shift = entry[v].recip();
        entry[parent] -= shift;
        degree[parent] -= 1;
        if degree[parent] <= 1 {
            leaves.insert(parent);
        }
    }
    debug_assert!(product.is_integer());
    Some(product.to_integer())
}

fn int_matrix(g: &PlumbingGraph) -> Vec<Vec<BigInt>> {
    intersection_matrix(g)
        .rows()
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Fraction-free (Bareiss) Gaussian elimination with row pivoting.
pub fn bareiss_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss step must divide exactly");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `|det|` as a convenience for callers comparing magnitudes.
pub fn abs_tree_determinant(g: &PlumbingGraph) -> BigInt {
    tree_determinant(g).abs()
}
