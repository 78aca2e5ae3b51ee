//! Divisors (chip assignments) and firing scripts.
//!
//! A divisor assigns an integer number of chips to each vertex; a firing
//! script assigns a net number of lending moves to each vertex (negative
//! entries are borrowing moves). Both are plain integer vectors indexed in
//! the graph's vertex order.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An integer chip count per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(values: Vec<i64>) -> Self {
        Divisor(values)
    }

    pub fn zeros(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// Total number of chips on the graph. Invariant under chip-firing.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// True when every vertex is out of debt.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// True when every vertex other than `q` is out of debt.
    pub fn is_q_effective(&self, q: usize) -> bool {
        self.0.iter().enumerate().all(|(v, &x)| v == q || x >= 0)
    }

    /// Pointwise dominance: `self(v) >= other(v)` for all `v`.
    pub fn dominates(&self, other: &Divisor) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    /// The divisor with one extra chip at `v`.
    pub fn with_added_chip(&self, v: usize) -> Divisor {
        let mut values = self.0.clone();
        values[v] += 1;
        Divisor(values)
    }
}

impl Index<usize> for Divisor {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl From<Vec<i64>> for Divisor {
    fn from(values: Vec<i64>) -> Self {
        Divisor(values)
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        debug_assert_eq!(self.len(), rhs.len());
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        debug_assert_eq!(self.len(), rhs.len());
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A net number of lending moves per vertex; negative entries are borrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiringScript(Vec<i64>);

impl FiringScript {
    pub fn new(counts: Vec<i64>) -> Self {
        FiringScript(counts)
    }

    pub fn zeros(n: usize) -> Self {
        FiringScript(vec![0; n])
    }

    /// The script firing `v` once and no other vertex.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut counts = vec![0; n];
        counts[v] = 1;
        FiringScript(counts)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn counts(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add_assign(&mut self, rhs: &FiringScript) {
        debug_assert_eq!(self.len(), rhs.len());
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }

    pub fn scaled(&self, k: i64) -> FiringScript {
        FiringScript(self.0.iter().map(|x| k * x).collect())
    }
}

impl Index<usize> for FiringScript {
    type Output = i64;
    fn index(&self, v: usize) -> &i64 {
        &self.0[v]
    }
}

impl From<Vec<i64>> for FiringScript {
    fn from(counts: Vec<i64>) -> Self {
        FiringScript(counts)
    }
}

impl Add for &FiringScript {
    type Output = FiringScript;
    fn add(self, rhs: &FiringScript) -> FiringScript {
        debug_assert_eq!(self.len(), rhs.len());
        FiringScript(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &FiringScript {
    type Output = FiringScript;
    fn sub(self, rhs: &FiringScript) -> FiringScript {
        debug_assert_eq!(self.len(), rhs.len());
        FiringScript(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FiringScript {
    type Output = FiringScript;
    fn neg(self) -> FiringScript {
        FiringScript(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for FiringScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
