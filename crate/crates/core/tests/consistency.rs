//! Per-type sums agree with the closed-form total for every squarefree n up to 10^5.

use hgs_core::{breakdown, par, sweep::squarefree_in};

#[test]
fn totals_agree_up_to_1e5() {
    let ns = squarefree_in(1, 100_000);
    assert_eq!(ns.len(), 60_794);
    let failures: Vec<String> = par::map(&ns, |nf| match breakdown(nf) {
        Ok(bd) if bd.total_by_sum == bd.total_by_formula => None,
        Ok(bd) => Some(format!("{}: {} vs {}", nf.n(), bd.total_by_sum, bd.total_by_formula)),
        Err(e) => Some(format!("{}: {e}", nf.n())),
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
}
