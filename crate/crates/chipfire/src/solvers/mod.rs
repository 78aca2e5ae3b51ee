//! Decision procedures for the Dollar Game on weighted graphs: the kernel
//! script, winnability by greedy borrowing, the burning algorithm with its
//! q-reduction machinery, integer linear equivalence, and the Jacobian.

mod burning;
mod greedy;

pub use burning::{
    enumerate_q_reduced, is_winnable, make_q_effective, modified_burning, q_reduce,
    q_reduce_with_cap, BurnEvent, BurnReport, DEFAULT_BURN_ROUND_CAP,
};
pub use greedy::modified_greedy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::divisor::{Divisor, FiringScript};
use crate::graph::{gcd, lcm, WeightedGraph};
use crate::intsolve;

/// Failure modes of the solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("divisor is not q-effective: vertex {id:?} has {value} chips")]
    NotQEffective { id: String, value: i64 },
    #[error("q-reduction did not settle within {cap} burning rounds")]
    IterationCapExceeded { cap: u64 },
}

/// Outcome of a winnability decision. A winnable divisor comes with a
/// script whose application yields the effective witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Winnability {
    Winnable { script: FiringScript, witness: Divisor },
    Unwinnable,
}

impl Winnability {
    pub fn is_winnable(&self) -> bool {
        matches!(self, Winnability::Winnable { .. })
    }
}

/// The generator of the Laplacian kernel: the charges vector. Every kernel
/// element is an integer multiple of it.
pub fn kernel_script(g: &WeightedGraph) -> FiringScript {
    FiringScript::new(g.charges().to_vec())
}

/// Invariant factors (each > 1, in a divisibility chain) and order of the
/// group of degree-zero divisor classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianDescription {
    pub invariant_factors: Vec<i64>,
    pub order: i64,
}

/// The Jacobian of the graph, computed from the Smith normal form of the
/// Laplacian. The single zero factor (the kernel direction) and all unit
/// factors are dropped; the group order is the product of what remains.
pub fn jacobian(g: &WeightedGraph) -> JacobianDescription {
    let diag = intsolve::smith_diagonal(&g.laplacian().rows());
    debug_assert_eq!(diag.iter().filter(|&&d| d == 0).count(), 1, "rank must be n-1");
    let invariant_factors: Vec<i64> = diag.into_iter().filter(|&d| d > 1).collect();
    let order = invariant_factors.iter().product();
    JacobianDescription { invariant_factors, order }
}

/// Finds a firing script taking `d1` to `d2`, or `None` when the divisors
/// are not linearly equivalent. The witness is canonicalized so that
/// `0 <= s(v0) < c(v0)` at the first-listed vertex; solutions are unique
/// modulo the kernel script.
pub fn linear_equiv(g: &WeightedGraph, d1: &Divisor, d2: &Divisor) -> Option<FiringScript> {
    if d1.degree() != d2.degree() {
        return None;
    }
    let b = d1 - d2;
    let raw = intsolve::solve_linear_system(&g.laplacian().rows(), b.values())?;
    let charges = g.charges();
    let k = raw[0].div_euclid(charges[0]);
    let counts = raw.iter().zip(charges).map(|(x, c)| x - k * c).collect();
    Some(FiringScript::new(counts))
}

/// Local charge of `q`: with `t(v)` the chips `q` receives per lending
/// move at a neighbor `v`,
///
/// ```text
/// c_local(q) = lcm(gcd over neighbors of t(v), val(q)) / val(q).
/// ```
///
/// It divides `c(q)` and governs which q-classes of a divisor class can
/// hold a q-reduced divisor. For the one-vertex graph it is defined as 1.
pub fn local_charge(g: &WeightedGraph, q: usize) -> i64 {
    let neighbors = g.neighbors(q);
    if neighbors.is_empty() {
        return 1;
    }
    let g0 = neighbors.iter().fold(0, |acc, &v| gcd(acc, g.transfer(v, q)));
    let val = g.weighted_valency(q);
    lcm(g0, val) / val
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::GraphSpec;

    #[test]
    fn kernel_script_is_charges() {
        let tri = fixtures::triangle();
        assert_eq!(kernel_script(&tri), FiringScript::new(vec![1, 1, 1]));
        let star = fixtures::weighted_star();
        let k = kernel_script(&star);
        assert_eq!(k, FiringScript::new(vec![1, 1, 2, 2]));
        assert_eq!(star.laplacian().apply(&k), Divisor::zeros(4));
        let diamond = fixtures::weighted_diamond();
        let k = kernel_script(&diamond);
        assert_eq!(k, FiringScript::new(vec![1, 1, 2, 1]));
        assert_eq!(diamond.laplacian().apply(&k), Divisor::zeros(4));
    }

    #[test]
    fn jacobian_of_fixtures() {
        let single = fixtures::single_vertex();
        assert_eq!(jacobian(&single), JacobianDescription { invariant_factors: vec![], order: 1 });

        let tri = fixtures::triangle();
        assert_eq!(jacobian(&tri), JacobianDescription { invariant_factors: vec![3], order: 3 });

        let star = fixtures::weighted_star();
        assert_eq!(jacobian(&star), JacobianDescription { invariant_factors: vec![2], order: 2 });

        // Frozen from the brute-force class enumeration.
        assert_eq!(jacobian(&fixtures::weighted_cycle()).invariant_factors, vec![4]);
        assert_eq!(jacobian(&fixtures::weighted_diamond()).invariant_factors, vec![22]);
        // Unweighted: the order is the spanning-tree count.
        assert_eq!(jacobian(&fixtures::chorded_pentagon()).order, 11);
    }

    #[test]
    fn jacobian_with_two_invariant_factors() {
        // Complete graph on four vertices: 16 spanning trees split as 4x4.
        let spec = GraphSpec::from_parts(
            &[("a", 1), ("b", 1), ("c", 1), ("d", 1)],
            &[
                ("a", "b", 1),
                ("a", "c", 1),
                ("a", "d", 1),
                ("b", "c", 1),
                ("b", "d", 1),
                ("c", "d", 1),
            ],
        );
        let g = crate::graph::WeightedGraph::from_spec(&spec).unwrap();
        let jac = jacobian(&g);
        assert_eq!(jac.invariant_factors, vec![4, 4]);
        assert_eq!(jac.order, 16);
        // Divisibility chain.
        for pair in jac.invariant_factors.windows(2) {
            assert_eq!(pair[1] % pair[0], 0);
        }
    }

    #[test]
    fn linear_equiv_on_star() {
        let star = fixtures::weighted_star();
        let d1 = Divisor::new(vec![1, 0, 0, -1]);
        let d2 = Divisor::new(vec![0, 1, 0, -1]);
        let s = linear_equiv(&star, &d1, &d2).expect("equivalent");
        assert_eq!(star.apply_script(&d1, &s), d2);
        // The witness agrees with (1,0,1,1) modulo the kernel.
        let diff = &s - &FiringScript::new(vec![1, 0, 1, 1]);
        let c = kernel_script(&star);
        assert!(is_multiple_of(&diff, &c));
        // Canonical at the first vertex.
        assert!(0 <= s[0] && s[0] < star.charge(0));
    }

    #[test]
    fn linear_equiv_identity_and_failure() {
        let star = fixtures::weighted_star();
        let d = Divisor::new(vec![1, 0, 0, -1]);
        assert_eq!(linear_equiv(&star, &d, &d), Some(FiringScript::zeros(4)));
        // Degree-zero but in the nontrivial Jacobian class.
        assert_eq!(linear_equiv(&star, &d, &Divisor::zeros(4)), None);
        // Degree mismatch short-circuits.
        assert_eq!(linear_equiv(&star, &d, &Divisor::new(vec![1, 0, 0, 0])), None);
    }

    fn is_multiple_of(s: &FiringScript, c: &FiringScript) -> bool {
        let k = s[0].div_euclid(c[0]);
        (0..s.len()).all(|v| s[v] == k * c[v])
    }

    #[test]
    fn local_charge_values() {
        let star = fixtures::weighted_star();
        let q = star.vertex_index("v4").unwrap();
        assert_eq!(local_charge(&star, q), 1);

        let pent = fixtures::chorded_pentagon();
        for q in 0..pent.vertex_count() {
            assert_eq!(local_charge(&pent, q), 1);
        }

        let spec = GraphSpec::from_parts(&[("a", 2), ("b", 1)], &[("a", "b", 1)]);
        let g = crate::graph::WeightedGraph::from_spec(&spec).unwrap();
        assert_eq!(local_charge(&g, 1), 2);
        assert_eq!(local_charge(&g, 0), 1);
    }

    #[test]
    fn local_charge_divides_charge() {
        for g in [
            fixtures::weighted_star(),
            fixtures::weighted_diamond(),
            fixtures::weighted_cycle(),
            fixtures::weighted_triangle(),
        ] {
            for q in 0..g.vertex_count() {
                assert_eq!(g.charge(q) % local_charge(&g, q), 0);
            }
        }
    }
}
