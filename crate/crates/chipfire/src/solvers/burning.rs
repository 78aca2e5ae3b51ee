//! The burning algorithm for weighted graphs, and everything built on it:
//! q-effective transforms, q-reduction, winnability, and enumeration of
//! the q-reduced divisors of a class.
//!
//! The burning algorithm takes a q-effective divisor and looks for a legal
//! firing script: one with no negative entries that sends no out-of-debt
//! vertex into debt. For each number of q-firings `f` in `0..c(q)` it
//! starts from the maximal candidate (every other vertex fires its charge
//! many times), repeatedly "burns" (decrements) every vertex the current
//! candidate would send into debt, and stops when the candidate is legal
//! or has burned to nothing. Among the per-f candidates it returns the one
//! leaving the most chips at q, breaking ties toward smaller f. The zero
//! script comes back exactly when the divisor is q-reduced.

use serde::{Deserialize, Serialize};

use crate::divisor::{Divisor, FiringScript};
use crate::graph::WeightedGraph;
use crate::solvers::{SolverError, Winnability};

/// Upper bound on burning rounds inside [`q_reduce`]; purely diagnostic,
/// far beyond anything a terminating reduction needs.
pub const DEFAULT_BURN_ROUND_CAP: u64 = 1_000_000;

/// One burn: `vertex` was decremented during `pass`. Pass 0 is reserved
/// for q itself, the source of the fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnEvent {
    pub vertex: usize,
    pub pass: u32,
}

/// Result of a burning run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnReport {
    /// The selected legal script; zero iff the input was q-reduced.
    pub script: FiringScript,
    /// The per-f candidate scripts, indexed by f.
    pub candidates: Vec<FiringScript>,
    /// Burn order of the selected run: q at pass 0, then every decrement,
    /// same-pass burns listed by vertex index. A full burn contains each
    /// vertex `v != q` exactly `c(v)` times.
    pub trace: Vec<BurnEvent>,
    /// Number of decrementing passes summed over all f runs; bounded by
    /// `c(q) * (sum of c(v) over v != q)`.
    pub iterations: u64,
}

struct CandidateRun {
    sigma: Vec<i64>,
    trace: Vec<BurnEvent>,
    passes: u64,
}

/// Runs the inner burning loop with `sigma(q)` pinned to `f`.
fn burn_candidate(g: &WeightedGraph, d: &[i64], q: usize, f: i64) -> CandidateRun {
    let n = g.vertex_count();
    let laplacian = g.laplacian();
    let mut sigma: Vec<i64> = g.charges().to_vec();
    sigma[q] = f;
    let mut trace = vec![BurnEvent { vertex: q, pass: 0 }];
    let mut passes = 0u64;
    let mut burned = Vec::with_capacity(n);

    while (0..n).any(|v| v != q && sigma[v] != 0) {
        burned.clear();
        for v in (0..n).filter(|&v| v != q) {
            let removed: i64 = laplacian.row(v).iter().zip(&sigma).map(|(l, s)| l * s).sum();
            if d[v] - removed < 0 {
                burned.push(v);
            }
        }
        if burned.is_empty() {
            break;
        }
        passes += 1;
        for &v in &burned {
            debug_assert!(sigma[v] > 0, "a vertex with no moves left cannot be in debt");
            sigma[v] -= 1;
            trace.push(BurnEvent { vertex: v, pass: passes as u32 });
        }
    }
    CandidateRun { sigma, trace, passes }
}

/// The burning algorithm. Requires a q-effective divisor; returns the
/// selected legal script together with all per-f candidates, the burn
/// trace of the selected run, and the pass counter.
pub fn modified_burning(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
) -> Result<BurnReport, SolverError> {
    let n = g.vertex_count();
    assert_eq!(d.len(), n, "divisor length must match vertex count");
    if let Some(v) = (0..n).find(|&v| v != q && d[v] < 0) {
        return Err(SolverError::NotQEffective {
            id: g.vertex_id(v).to_owned(),
            value: d[v],
        });
    }

    let laplacian = g.laplacian();
    let mut runs = Vec::with_capacity(g.charge(q) as usize);
    let mut iterations = 0u64;
    for f in 0..g.charge(q) {
        let run = burn_candidate(g, d.values(), q, f);
        iterations += run.passes;
        runs.push(run);
    }
    debug_assert!(
        iterations
            <= g.charge(q) as u64
                * (0..n).filter(|&v| v != q).map(|v| g.charge(v) as u64).sum::<u64>(),
        "pass count exceeded c(q) * sum of charges"
    );

    // Chips removed from q by each candidate; pick the minimum, i.e. the
    // script leaving the most chips at q. Ties go to the smallest f.
    let value_at_q = |sigma: &[i64]| -> i64 {
        laplacian.row(q).iter().zip(sigma).map(|(l, s)| l * s).sum()
    };
    let best = (0..runs.len())
        .min_by_key(|&f| value_at_q(&runs[f].sigma))
        .expect("c(q) >= 1 guarantees at least one candidate");

    let script = FiringScript::new(runs[best].sigma.clone());
    debug_assert!(script.is_nonnegative());
    let trace = runs[best].trace.clone();
    let candidates = runs.into_iter().map(|r| FiringScript::new(r.sigma)).collect();
    Ok(BurnReport { script, candidates, trace, iterations })
}

/// Brings every vertex except `q` out of debt by lending along a breadth-
/// first spanning tree rooted at `q`: vertices are processed in reverse
/// discovery order, and the tree parent of an in-debt vertex lends just
/// often enough to clear the debt. Returns the q-effective divisor and the
/// cumulative script.
pub fn make_q_effective(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
) -> (Divisor, FiringScript) {
    let n = g.vertex_count();
    assert_eq!(d.len(), n, "divisor length must match vertex count");
    let laplacian = g.laplacian();

    // BFS discovery order and tree parents, neighbors scanned by index.
    let mut order = vec![q];
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[q] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                order.push(u);
            }
        }
    }

    let mut current: Vec<i64> = d.values().to_vec();
    let mut counts = vec![0i64; n];
    for &v in order.iter().skip(1).rev() {
        if current[v] < 0 {
            let p = parent[v];
            let per_lend = g.transfer(p, v);
            let k = (-current[v] + per_lend - 1) / per_lend;
            for u in 0..n {
                current[u] -= k * laplacian.entry(u, p);
            }
            counts[p] += k;
        }
    }

    let script = FiringScript::new(counts);
    let result = Divisor::new(current);
    debug_assert!(result.is_q_effective(q));
    debug_assert_eq!(g.apply_script(d, &script), result);
    (result, script)
}

/// q-reduces a divisor: makes it q-effective, then applies burning scripts
/// until the zero script signals a dead end. Returns the q-reduced divisor
/// and the cumulative script. Uses [`DEFAULT_BURN_ROUND_CAP`].
pub fn q_reduce(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
) -> Result<(Divisor, FiringScript), SolverError> {
    q_reduce_with_cap(g, d, q, DEFAULT_BURN_ROUND_CAP)
}

/// [`q_reduce`] with an explicit diagnostic cap on burning rounds.
pub fn q_reduce_with_cap(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
    cap: u64,
) -> Result<(Divisor, FiringScript), SolverError> {
    let (mut current, mut script) = make_q_effective(g, d, q);
    let mut rounds = 0u64;
    loop {
        let report = modified_burning(g, &current, q)
            .expect("reduction keeps the divisor q-effective");
        if report.script.is_zero() {
            return Ok((current, script));
        }
        current = g.apply_script(&current, &report.script);
        script.add_assign(&report.script);
        rounds += 1;
        if rounds >= cap {
            return Err(SolverError::IterationCapExceeded { cap });
        }
    }
}

/// Decides the Dollar Game: a divisor is winnable iff its q-reduced form
/// at the first-listed vertex is out of debt there. On a win, returns the
/// effective witness and the cumulative script reaching it.
pub fn is_winnable(g: &WeightedGraph, d: &Divisor) -> Result<Winnability, SolverError> {
    if d.degree() < 0 {
        return Ok(Winnability::Unwinnable);
    }
    let q = 0;
    let (reduced, script) = q_reduce(g, d, q)?;
    if reduced[q] >= 0 {
        debug_assert!(reduced.is_effective());
        Ok(Winnability::Winnable { script, witness: reduced })
    } else {
        Ok(Winnability::Unwinnable)
    }
}

/// All q-reduced divisors linearly equivalent to `d`, one per q-class that
/// has one. The list has between 1 and `c(q) / c_local(q)` members, all
/// sharing the same value at q; they are returned in the order of the
/// q-firing shift that produced them.
///
/// Each of the `c(q)` q-classes of the class of `d` is reduced in
/// isolation: starting from a q-effective representative, burning runs
/// restricted to scripts that never fire q are applied until they return
/// zero, and the resulting dead end is kept iff it passes the full
/// q-reduced test.
pub fn enumerate_q_reduced(
    g: &WeightedGraph,
    d: &Divisor,
    q: usize,
) -> Result<Vec<Divisor>, SolverError> {
    let n = g.vertex_count();
    let laplacian = g.laplacian();
    let (anchor, _) = q_reduce(g, d, q)?;

    let mut found = Vec::new();
    for shift in 0..g.charge(q) {
        // Fire q `shift` times from the anchor: q-effectiveness survives
        // because firing q only adds chips elsewhere.
        let mut current: Vec<i64> =
            (0..n).map(|v| anchor[v] - shift * laplacian.entry(v, q)).collect();

        // Reduce within the q-class: inner runs only, sigma(q) = 0.
        let mut rounds = 0u64;
        loop {
            let run = burn_candidate(g, &current, q, 0);
            if run.sigma.iter().all(|&s| s == 0) {
                break;
            }
            for v in 0..n {
                let removed: i64 =
                    laplacian.row(v).iter().zip(&run.sigma).map(|(l, s)| l * s).sum();
                current[v] -= removed;
            }
            rounds += 1;
            if rounds >= DEFAULT_BURN_ROUND_CAP {
                return Err(SolverError::IterationCapExceeded { cap: DEFAULT_BURN_ROUND_CAP });
            }
        }

        let candidate = Divisor::new(current);
        let report = modified_burning(g, &candidate, q)
            .expect("q-class reduction keeps the divisor q-effective");
        if report.script.is_zero() && !found.contains(&candidate) {
            found.push(candidate);
        }
    }
    Ok(found)
}
