//! Brute-force reference implementations of the chip-firing decision
//! procedures, for cross-checking the real solvers on small graphs.
//!
//! Everything here works by exhaustive search over a bounded box of firing
//! scripts and is deliberately independent of the solver implementations
//! in `chipfire`: no burning, no greedy strategy, no integer elimination.
//! Exponential running time on its bounded inputs is fine; these functions
//! belong in test suites, not in production paths.
//!
//! A box search cannot prove winnability for scripts outside its box, so
//! tests pair [`brute_winnable`] with a certificate or a solver
//! cross-check; [`check_winnable_certificate`] reports a box that turned
//! out to be too small instead of silently disagreeing.

#![forbid(unsafe_code)]

use thiserror::Error;

use chipfire::{Divisor, FiringScript, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("divisor is not q-effective: vertex {id:?} has {value} chips")]
    NotQEffective { id: String, value: i64 },
    #[error(
        "script box of radius {radius} is too small: a certificate decides \
         the instance but the search disagrees"
    )]
    BoxTooSmall { radius: i64 },
}

/// Bounds for the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    /// Script entries range over `[-radius, radius]`.
    pub script_radius: i64,
    /// Divisor entries range over `[-bound, bound]` where class
    /// enumeration generates divisors.
    pub divisor_entry_bound: i64,
}

impl SearchBounds {
    /// Default box for a given instance: radius `sum of |D(v)| + n*c(G)`,
    /// divisor entries up to 3.
    pub fn default_for(g: &WeightedGraph, d: &Divisor) -> SearchBounds {
        let radius = d.values().iter().map(|x| x.abs()).sum::<i64>()
            + g.vertex_count() as i64 * g.graph_charge();
        SearchBounds { script_radius: radius, divisor_entry_bound: 3 }
    }

    pub fn with_radius(radius: i64) -> SearchBounds {
        assert!(radius >= 0);
        SearchBounds { script_radius: radius, divisor_entry_bound: 3 }
    }
}

/// Visits every script with `0 <= s(0) < c(v0)` and the remaining entries
/// in `[-radius, radius]`, stopping early when `visit` returns true.
/// Restricting the first coordinate is sound for equivalence questions:
/// shifting by kernel multiples (the charges vector) brings any script's
/// first entry into `[0, c(v0))`.
fn search_scripts(
    g: &WeightedGraph,
    radius: i64,
    mut visit: impl FnMut(&[i64]) -> bool,
) -> bool {
    let n = g.vertex_count();
    let mut s = vec![0i64; n];
    // Order single coordinates by |value| so small witnesses surface fast.
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=radius).flat_map(|v| [v, -v]))
        .collect();
    fn rec(
        s: &mut Vec<i64>,
        at: usize,
        values: &[i64],
        visit: &mut impl FnMut(&[i64]) -> bool,
    ) -> bool {
        if at == s.len() {
            return visit(s);
        }
        for &v in values {
            s[at] = v;
            if rec(s, at + 1, values, visit) {
                return true;
            }
        }
        s[at] = 0;
        false
    }
    for first in 0..g.charge(0) {
        s[0] = first;
        if rec(&mut s, 1, &values, &mut visit) {
            return true;
        }
    }
    false
}

/// Exhaustive winnability: true iff some script in the box makes the
/// divisor effective.
pub fn brute_winnable(g: &WeightedGraph, d: &Divisor, bounds: &SearchBounds) -> bool {
    if d.degree() < 0 {
        return false;
    }
    search_scripts(g, bounds.script_radius, |s| {
        let script = FiringScript::new(s.to_vec());
        g.apply_script(d, &script).is_effective()
    })
}

/// [`brute_winnable`] with a winnability certificate from elsewhere. When
/// the certificate proves the divisor winnable but the box search misses
/// every witness, the box was too small and the caller learns that rather
/// than a wrong answer.
pub fn check_winnable_certificate(
    g: &WeightedGraph,
    d: &Divisor,
    bounds: &SearchBounds,
    certificate: Option<&FiringScript>,
) -> Result<bool, OracleError> {
    let decided = brute_winnable(g, d, bounds);
    if let Some(script) = certificate {
        if g.apply_script(d, script).is_effective() && !decided {
            return Err(OracleError::BoxTooSmall { radius: bounds.script_radius });
        }
    }
    Ok(decided)
}

/// Exhaustive q-reduced test, straight from the definition: the divisor
/// must be q-effective, no nonzero script with `0 <= s(v) <= c(v)` and
/// `s(q) = 0` may be legal, and no q-effective equivalent within the box
/// may carry more chips at q.
pub fn brute_q_reduced(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
    bounds: &SearchBounds,
) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if let Some(v) = (0..n).find(|&v| v != q && d[v] < 0) {
        return Err(OracleError::NotQEffective {
            id: g.vertex_id(v).to_owned(),
            value: d[v],
        });
    }

    // Legal scripts avoiding q: any hit means not reduced. Capping the
    // entries at the charges loses nothing, because subtracting kernel
    // multiples (and clamping at zero) preserves legality.
    let charges = g.charges();
    let mut s = vec![0i64; n];
    fn rec(
        g: &WeightedGraph,
        d: &Divisor,
        q: usize,
        charges: &[i64],
        s: &mut Vec<i64>,
        at: usize,
    ) -> bool {
        if at == s.len() {
            if s.iter().all(|&x| x == 0) {
                return false;
            }
            let script = FiringScript::new(s.clone());
            let out = g.apply_script(d, &script);
            return (0..d.len()).all(|v| out[v] >= 0 || d[v] < 0);
        }
        let top = if at == q { 0 } else { charges[at] };
        for v in 0..=top {
            s[at] = v;
            if rec(g, d, q, charges, s, at + 1) {
                return true;
            }
        }
        s[at] = 0;
        false
    }
    if rec(g, d, q, charges, &mut s, 0) {
        return Ok(false);
    }

    // Maximality of the q-value among box-reachable q-effective
    // equivalents.
    let better_exists = search_scripts(g, bounds.script_radius, |s| {
        let script = FiringScript::new(s.to_vec());
        let out = g.apply_script(d, &script);
        out.is_q_effective(q) && out[q] > d[q]
    });
    Ok(!better_exists)
}

/// All scripts in `[0, k]^n` killed by the Laplacian. The result is
/// always the arithmetic progression of the charges vector intersected
/// with the box.
pub fn brute_kernel(g: &WeightedGraph, k: i64) -> Vec<FiringScript> {
    let n = g.vertex_count();
    let laplacian = g.laplacian();
    let mut found = Vec::new();
    let mut s = vec![0i64; n];
    loop {
        let script = FiringScript::new(s.clone());
        if laplacian.apply(&script).values().iter().all(|&x| x == 0) {
            found.push(script);
        }
        // Odometer increment.
        let mut at = n;
        loop {
            if at == 0 {
                return found;
            }
            at -= 1;
            if s[at] < k {
                s[at] += 1;
                break;
            }
            s[at] = 0;
        }
    }
}

/// Splits the divisors of degree `k` with entries in the bound into
/// linear-equivalence classes by box search, returning one representative
/// per class (the first found in lexicographic order). For `k = 0` the
/// class count is the Jacobian order.
pub fn enumerate_degree_classes(
    g: &WeightedGraph,
    k: i64,
    bounds: &SearchBounds,
) -> Vec<Divisor> {
    let n = g.vertex_count();
    let b = bounds.divisor_entry_bound;
    let mut representatives: Vec<Divisor> = Vec::new();
    let mut d = vec![-b; n];
    loop {
        if d.iter().sum::<i64>() == k {
            let divisor = Divisor::new(d.clone());
            let is_new = !representatives
                .iter()
                .any(|rep| brute_equivalent(g, rep, &divisor, bounds));
            if is_new {
                representatives.push(divisor);
            }
        }
        let mut at = n;
        loop {
            if at == 0 {
                return representatives;
            }
            at -= 1;
            if d[at] < b {
                d[at] += 1;
                break;
            }
            d[at] = -b;
        }
    }
}

/// Box search for a script taking `d1` to `d2`.
pub fn brute_equivalent(
    g: &WeightedGraph,
    d1: &Divisor,
    d2: &Divisor,
    bounds: &SearchBounds,
) -> bool {
    if d1.degree() != d2.degree() {
        return false;
    }
    search_scripts(g, bounds.script_radius, |s| {
        let script = FiringScript::new(s.to_vec());
        &g.apply_script(d1, &script) == d2
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chipfire::fixtures;

    #[test]
    fn kernel_of_star_is_charge_multiples() {
        let g = fixtures::weighted_star();
        let found = brute_kernel(&g, 4);
        assert_eq!(
            found,
            vec![
                FiringScript::zeros(4),
                FiringScript::new(vec![1, 1, 2, 2]),
                FiringScript::new(vec![2, 2, 4, 4]),
            ]
        );
    }

    #[test]
    fn kernel_of_triangle() {
        let g = fixtures::triangle();
        let found = brute_kernel(&g, 2);
        assert_eq!(
            found,
            vec![
                FiringScript::zeros(3),
                FiringScript::new(vec![1, 1, 1]),
                FiringScript::new(vec![2, 2, 2]),
            ]
        );
    }

    #[test]
    fn kernel_of_diamond() {
        let g = fixtures::weighted_diamond();
        // In the box [0,4]^n the kernel is {0, c, 2c}; a [0,2]^n box cuts
        // the second multiple off at the charge-2 vertex.
        assert_eq!(
            brute_kernel(&g, 4),
            vec![
                FiringScript::zeros(4),
                FiringScript::new(vec![1, 1, 2, 1]),
                FiringScript::new(vec![2, 2, 4, 2]),
            ]
        );
        assert_eq!(
            brute_kernel(&g, 2),
            vec![FiringScript::zeros(4), FiringScript::new(vec![1, 1, 2, 1])]
        );
    }

    #[test]
    fn winnability_on_star() {
        let g = fixtures::weighted_star();
        let bounds = SearchBounds::with_radius(4);
        assert!(brute_winnable(&g, &Divisor::new(vec![0, 0, 1, -1]), &bounds));
        assert!(!brute_winnable(&g, &Divisor::new(vec![1, 0, 0, -1]), &bounds));
        assert!(!brute_winnable(&g, &Divisor::new(vec![-1, 0, 0, -1]), &bounds));
    }

    #[test]
    fn q_reduced_on_fixtures() {
        let star = fixtures::weighted_star();
        let q = star.vertex_index("v4").unwrap();
        let bounds = SearchBounds::with_radius(6);
        assert!(brute_q_reduced(&star, &Divisor::new(vec![1, 0, 0, -1]), q, &bounds).unwrap());
        assert!(brute_q_reduced(&star, &Divisor::new(vec![0, 1, 0, -1]), q, &bounds).unwrap());
        assert!(!brute_q_reduced(&star, &Divisor::new(vec![1, 0, 2, -1]), q, &bounds).unwrap());

        let pent = fixtures::chorded_pentagon();
        let q = pent.vertex_index("u1").unwrap();
        assert!(brute_q_reduced(&pent, &Divisor::new(vec![-1, 1, 0, 1, 0]), q, &bounds).unwrap());

        // Not q-effective at all.
        assert!(matches!(
            brute_q_reduced(&star, &Divisor::new(vec![-1, 0, 0, -1]), 3, &bounds),
            Err(OracleError::NotQEffective { .. })
        ));
    }

    #[test]
    fn degree_class_counts_match_group_orders() {
        let bounds = SearchBounds { script_radius: 8, divisor_entry_bound: 2 };
        assert_eq!(enumerate_degree_classes(&fixtures::weighted_star(), 0, &bounds).len(), 2);
        assert_eq!(enumerate_degree_classes(&fixtures::triangle(), 0, &bounds).len(), 3);
        assert_eq!(enumerate_degree_classes(&fixtures::single_vertex(), 0, &bounds).len(), 1);
        // Weighted cycle: the charge-2 first vertex exercises the
        // normalized first coordinate of the script search.
        assert_eq!(enumerate_degree_classes(&fixtures::weighted_cycle(), 0, &bounds).len(), 4);
    }

    #[test]
    fn certificate_flags_small_boxes() {
        let g = fixtures::weighted_star();
        let d = Divisor::new(vec![0, 0, 1, -1]);
        let witness = FiringScript::new(vec![0, 0, 0, -1]);
        // Honest box: agrees with the certificate.
        assert_eq!(
            check_winnable_certificate(&g, &d, &SearchBounds::with_radius(2), Some(&witness)),
            Ok(true)
        );
        // Radius-zero box cannot see the witness.
        assert_eq!(
            check_winnable_certificate(&g, &d, &SearchBounds::with_radius(0), Some(&witness)),
            Err(OracleError::BoxTooSmall { radius: 0 })
        );
    }
}
