//! Winnability by greedy borrowing.
//!
//! Repeatedly borrow at an in-debt vertex while any vertex has borrowed
//! fewer than its charge many times. Once every vertex has reached its
//! charge with debt still present, a full kernel multiple of borrows has
//! been spent without progress and the divisor is unwinnable.

use crate::divisor::FiringScript;
use crate::graph::WeightedGraph;
use crate::solvers::Winnability;
use crate::Divisor;

/// Decides winnability by borrowing at the lowest-indexed in-debt vertex.
///
/// On a win, the returned script (all entries <= 0, one per borrow) sends
/// the input to the effective witness. The vertex choice is deterministic
/// so identical inputs replay identically; correctness does not depend on
/// the choice order.
pub fn modified_greedy(g: &WeightedGraph, d: &Divisor) -> Winnability {
    let n = g.vertex_count();
    assert_eq!(d.len(), n, "divisor length must match vertex count");
    let charges = g.charges();
    let laplacian = g.laplacian();
    let mut current: Vec<i64> = d.values().to_vec();
    let mut borrowed = vec![0i64; n];

    loop {
        match (0..n).find(|&v| current[v] < 0) {
            None => {
                let script = FiringScript::new(borrowed.iter().map(|&b| -b).collect());
                let witness = Divisor::new(current);
                debug_assert_eq!(g.apply_script(d, &script), witness);
                return Winnability::Winnable { script, witness };
            }
            Some(v) => {
                if !(0..n).any(|u| borrowed[u] < charges[u]) {
                    return Winnability::Unwinnable;
                }
                // Borrow at v: add the v-th Laplacian column.
                for u in 0..n {
                    current[u] += laplacian.entry(u, v);
                }
                borrowed[v] += 1;
            }
        }
    }
}
