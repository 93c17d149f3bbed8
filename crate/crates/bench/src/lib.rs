//! Inputs shared by the benchmarks under `benches/`.

use cohspec::algebra::{FiniteAlgebra, WAlgebra, WElem};

/// `ℤ/n` with the family given by element values.
pub fn ring_family(n: usize, values: &[usize]) -> (WAlgebra, Vec<WElem>) {
    let r = FiniteAlgebra::zmod(n);
    let fam = values
        .iter()
        .map(|v| WElem::Fin(r.index_of(&(v % n).to_string()).expect("element of Z/n")))
        .collect();
    (r.into(), fam)
}
