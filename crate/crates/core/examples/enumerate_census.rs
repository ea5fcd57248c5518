//! Census of minimal negative-definite trees with few vertices.

use std::collections::BTreeMap;

use plumbing::enumerate::enumerate_and_classify;

fn main() {
    let results = enumerate_and_classify(6, -4, -2).unwrap();
    let mut table: BTreeMap<(usize, &str, &str), usize> = BTreeMap::new();
    for (g, r) in &results {
        *table.entry((g.len(), r.prediction.as_str(), r.laufer_verdict.as_str())).or_default() += 1;
    }
    println!("{} trees", results.len());
    for ((n, prediction, verdict), count) in table {
        println!("n={n} {prediction:<14} {verdict:<20} {count}");
    }
}
