//! Burn-order words and the divisors they determine.
//!
//! A *word* on a weighted graph is a sequence of vertices in which each
//! vertex `v` appears exactly `c(v)` times: the order in which charge is
//! consumed during a full burn. Words generalize the acyclic orientations
//! of unweighted chip-firing, where each vertex burns exactly once.
//!
//! For a word `W` and position `n`, the step count `k_v(n)` is the number
//! of occurrences of `v` before `n`. The net flow
//!
//! ```text
//! h_n(v, u) = sum over e in E(u,v) of (k_u(n)*w(u) - k_v(n)*w(v)) / w(e)
//! ```
//!
//! is the number of chips `v` loses to `u` under the script checked at
//! stage `n`, and `f_n(v) = sum over u of h_n(v, u)` is the total outflow
//! from `v` at that stage. The divisor of the word puts
//! `min over occurrences i of v of f_i(v), minus 1` chips on `v`: the most
//! chips `v` can hold while still burning at each of its scheduled stages.
//! Every such divisor (with the word starting at a charge-1 vertex q) is
//! unwinnable, and every maximally unwinnable divisor arises this way, so
//! a scan over all words yields the complete census.

use thiserror::Error;

use crate::divisor::Divisor;
use crate::graph::WeightedGraph;
use crate::solvers::{self, SolverError, Winnability};

/// Failure modes of the word machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid word: vertex {id:?} occurs {found} times, its charge is {charge}")]
    InvalidWord { id: String, found: usize, charge: i64 },
    #[error("vertex {id:?} has charge {charge}, the word construction needs charge 1")]
    ChargeAtQNotOne { id: String, charge: i64 },
    #[error("divisor is not q-reduced at {id:?}")]
    NotQReduced { id: String },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A sequence of vertex indices in which each vertex `v` occurs exactly
/// `c(v)` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<usize>,
}

impl Word {
    /// Validates the multiplicity condition against a graph.
    pub fn new(g: &WeightedGraph, letters: Vec<usize>) -> Result<Word, WordError> {
        let mut counts = vec![0usize; g.vertex_count()];
        for &v in &letters {
            counts[v] += 1;
        }
        for v in 0..g.vertex_count() {
            if counts[v] as i64 != g.charge(v) {
                return Err(WordError::InvalidWord {
                    id: g.vertex_id(v).to_owned(),
                    found: counts[v],
                    charge: g.charge(v),
                });
            }
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters as vertex indices; positions are 1-based in the math and
    /// 0-based here.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// First letter of the word.
    pub fn first(&self) -> usize {
        self.letters[0]
    }

    /// Step count `k_v(n)`: occurrences of `v` strictly before the
    /// 1-based position `n`, for `n` in `1..=len+1`.
    pub fn step_count(&self, v: usize, n: usize) -> i64 {
        assert!((1..=self.len() + 1).contains(&n), "position out of range");
        self.letters[..n - 1].iter().filter(|&&u| u == v).count() as i64
    }

    /// The 1-based positions at which `v` occurs.
    pub fn positions_of(&self, v: usize) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .filter(|&(_, &u)| u == v)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn to_ids(&self, g: &WeightedGraph) -> Vec<String> {
        self.letters.iter().map(|&v| g.vertex_id(v).to_owned()).collect()
    }
}

/// Net chips lost by `v` to `u` under the stage-`n` script of word `w`;
/// antisymmetric in `(v, u)`. Requires `u != v`.
pub fn h_value(g: &WeightedGraph, w: &Word, n: usize, v: usize, u: usize) -> i64 {
    assert_ne!(u, v, "h_value requires distinct vertices");
    let ku = w.step_count(u, n);
    let kv = w.step_count(v, n);
    g.edges()
        .iter()
        .filter(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u))
        .map(|e| e.mult * (ku * g.vertex_weight(u) - kv * g.vertex_weight(v)) / e.weight)
        .sum()
}

/// Total outflow `f_n(v)` from `v` at stage `n`.
fn stage_outflow(g: &WeightedGraph, w: &Word, n: usize, v: usize) -> i64 {
    (0..g.vertex_count()).filter(|&u| u != v).map(|u| h_value(g, w, n, v, u)).sum()
}

/// The divisor of a word: at each vertex, one chip less than the smallest
/// outflow over the vertex's scheduled stages. If the word starts at `q`
/// the divisor has value -1 there.
pub fn divisor_of_word(g: &WeightedGraph, w: &Word) -> Divisor {
    let values = (0..g.vertex_count())
        .map(|v| {
            let min = w
                .positions_of(v)
                .into_iter()
                .map(|i| stage_outflow(g, w, i, v))
                .min()
                .expect("every vertex occurs in a valid word");
            min - 1
        })
        .collect();
    Divisor::new(values)
}

/// The word of a q-reduced divisor: the order in which the vertices burn,
/// with q first and same-pass burns ordered by vertex index. Requires
/// `c(q) = 1` and a q-reduced input.
pub fn word_of_divisor(g: &WeightedGraph, d: &Divisor, q: usize) -> Result<Word, WordError> {
    if g.charge(q) != 1 {
        return Err(WordError::ChargeAtQNotOne {
            id: g.vertex_id(q).to_owned(),
            charge: g.charge(q),
        });
    }
    if !d.is_q_effective(q) {
        return Err(WordError::NotQReduced { id: g.vertex_id(q).to_owned() });
    }
    let report = solvers::modified_burning(g, d, q)?;
    if !report.script.is_zero() {
        return Err(WordError::NotQReduced { id: g.vertex_id(q).to_owned() });
    }
    let letters = report.trace.iter().map(|e| e.vertex).collect();
    Word::new(g, letters)
}

/// All words starting at `q`, in lexicographic order of vertex indices.
/// Requires `c(q) = 1`; the count is `(sum of charges - 1)!` divided by
/// the product of `c(v)!`.
pub fn enumerate_words(g: &WeightedGraph, q: usize) -> Result<Vec<Word>, WordError> {
    if g.charge(q) != 1 {
        return Err(WordError::ChargeAtQNotOne {
            id: g.vertex_id(q).to_owned(),
            charge: g.charge(q),
        });
    }
    let mut remaining: Vec<i64> = g.charges().to_vec();
    remaining[q] = 0;
    let total: i64 = remaining.iter().sum();

    let mut words = Vec::new();
    let mut prefix = vec![q];
    fn extend(
        remaining: &mut Vec<i64>,
        left: i64,
        prefix: &mut Vec<usize>,
        words: &mut Vec<Word>,
    ) {
        if left == 0 {
            words.push(Word { letters: prefix.clone() });
            return;
        }
        for v in 0..remaining.len() {
            if remaining[v] > 0 {
                remaining[v] -= 1;
                prefix.push(v);
                extend(remaining, left - 1, prefix, words);
                prefix.pop();
                remaining[v] += 1;
            }
        }
    }
    extend(&mut remaining, total, &mut prefix, &mut words);
    Ok(words)
}

/// A maximally unwinnable divisor together with the first word (in
/// enumeration order) that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub word: Word,
    pub divisor: Divisor,
}

/// The census of maximally unwinnable divisors: evaluates the divisor of
/// every word starting at `q`, deduplicates, and keeps the q-effective
/// divisors not strictly dominated by any other divisor in the list.
/// Every entry is q-reduced and unwinnable, and one added chip anywhere
/// makes it winnable.
///
/// Words can also produce divisors with debt away from q; those are
/// unwinnable but not q-reduced, so they stay out of the census. They do
/// take part in the dominance comparisons, where they eliminate the
/// non-maximal entries of their classes.
pub fn max_unwinnable_census(
    g: &WeightedGraph,
    q: usize,
) -> Result<Vec<CensusEntry>, WordError> {
    let words = enumerate_words(g, q)?;
    let mut pool: Vec<CensusEntry> = Vec::new();
    for word in words {
        let divisor = divisor_of_word(g, &word);
        if !pool.iter().any(|e| e.divisor == divisor) {
            pool.push(CensusEntry { word, divisor });
        }
    }
    let maximal: Vec<CensusEntry> = pool
        .iter()
        .filter(|entry| {
            entry.divisor.is_q_effective(q)
                && !pool.iter().any(|other| {
                    other.divisor != entry.divisor && other.divisor.dominates(&entry.divisor)
                })
        })
        .cloned()
        .collect();
    Ok(maximal)
}

/// Sum of one pair of census divisors and the q-reduced representative of
/// its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSum {
    pub left: usize,
    pub right: usize,
    pub sum: Divisor,
    pub class_rep: Divisor,
}

/// The pairs whose sums share one linear-equivalence class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumClassGroup {
    pub class_rep: Divisor,
    pub pairs: Vec<(usize, usize)>,
}

/// Sums of census classes, grouped by linear equivalence, plus the
/// comparison against the divisor `v -> val(v) - 2` (the canonical divisor
/// of the unweighted theory).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub sums: Vec<PairSum>,
    pub groups: Vec<SumClassGroup>,
    pub val_minus_two: Divisor,
    /// Index into `groups` of a sum class linearly equivalent to the
    /// val-2 divisor, when one exists.
    pub val_minus_two_group: Option<usize>,
}

/// Pairs up census classes: for every unordered pair (a class with itself
/// included) the class of the pointwise sum is computed via
/// [`solvers::linear_equiv`], equal classes are grouped, and the divisor
/// `v -> val(v) - 2` is checked against every sum class.
pub fn pairing_exploration(
    g: &WeightedGraph,
    census: &[CensusEntry],
    q: usize,
) -> Result<PairingReport, WordError> {
    let mut sums = Vec::new();
    let mut groups: Vec<SumClassGroup> = Vec::new();
    for i in 0..census.len() {
        for j in i..census.len() {
            let sum = &census[i].divisor + &census[j].divisor;
            let group = groups
                .iter()
                .position(|grp| solvers::linear_equiv(g, &sum, &grp.class_rep).is_some());
            let group = match group {
                Some(idx) => idx,
                None => {
                    let (class_rep, _) = solvers::q_reduce(g, &sum, q)?;
                    groups.push(SumClassGroup { class_rep, pairs: Vec::new() });
                    groups.len() - 1
                }
            };
            groups[group].pairs.push((i, j));
            sums.push(PairSum {
                left: i,
                right: j,
                sum,
                class_rep: groups[group].class_rep.clone(),
            });
        }
    }
    let val_minus_two =
        Divisor::new((0..g.vertex_count()).map(|v| g.weighted_valency(v) - 2).collect());
    let val_minus_two_group = groups
        .iter()
        .position(|grp| solvers::linear_equiv(g, &val_minus_two, &grp.class_rep).is_some());
    Ok(PairingReport { sums, groups, val_minus_two, val_minus_two_group })
}

/// Convenience: the maximality definition check for a census entry.
/// `d` must be unwinnable while `d` plus one chip anywhere is winnable.
pub fn is_maximally_unwinnable(g: &WeightedGraph, d: &Divisor) -> Result<bool, SolverError> {
    if solvers::is_winnable(g, d)?.is_winnable() {
        return Ok(false);
    }
    for v in 0..g.vertex_count() {
        if let Winnability::Unwinnable = solvers::is_winnable(g, &d.with_added_chip(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}
