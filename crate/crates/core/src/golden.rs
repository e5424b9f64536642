//! Exact arithmetic for the Fibonacci generator matrices at `δ = ±φ`.
//!
//! At those loop values every entry lies in `Z[φ][b]` with `φ^2 = φ + 1`
//! and `b^2 = 1 - δ^-2 = φ - 1`: `δ = ±φ`, `a = ±(φ - 1)`, `δb^2 = ±1`.
//! This lets the relation suite be checked with zero residual.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::Result;
use crate::fibrep::{self, Entry, FibBasis, RightEnd};

/// An element of `Z[φ]`, stored as `p + qφ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Golden {
    pub p: i64,
    pub q: i64,
}

impl Golden {
    pub const ZERO: Golden = Golden { p: 0, q: 0 };
    pub const ONE: Golden = Golden { p: 1, q: 0 };
    pub const PHI: Golden = Golden { p: 0, q: 1 };

    pub fn to_f64(self) -> f64 {
        self.p as f64 + self.q as f64 * fibrep::phi()
    }
}

impl Add for Golden {
    type Output = Golden;
    fn add(self, o: Golden) -> Golden {
        Golden { p: self.p + o.p, q: self.q + o.q }
    }
}

impl Sub for Golden {
    type Output = Golden;
    fn sub(self, o: Golden) -> Golden {
        self + -o
    }
}

impl Neg for Golden {
    type Output = Golden;
    fn neg(self) -> Golden {
        Golden { p: -self.p, q: -self.q }
    }
}

impl Mul for Golden {
    type Output = Golden;
    fn mul(self, o: Golden) -> Golden {
        // (p + qφ)(r + sφ) = pr + qs + (ps + qr + qs)φ
        Golden {
            p: self.p * o.p + self.q * o.q,
            q: self.p * o.q + self.q * o.p + self.q * o.q,
        }
    }
}

/// `x + y·b` with `x, y ∈ Z[φ]` and `b^2 = φ - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenB {
    pub x: Golden,
    pub y: Golden,
}

impl GoldenB {
    pub const ZERO: GoldenB = GoldenB { x: Golden::ZERO, y: Golden::ZERO };
    pub const B: GoldenB = GoldenB { x: Golden::ZERO, y: Golden::ONE };

    pub fn from_golden(x: Golden) -> Self {
        Self { x, y: Golden::ZERO }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn to_f64(self) -> f64 {
        self.x.to_f64() + self.y.to_f64() * (fibrep::phi() - 1.0).sqrt()
    }
}

impl Add for GoldenB {
    type Output = GoldenB;
    fn add(self, o: GoldenB) -> GoldenB {
        GoldenB { x: self.x + o.x, y: self.y + o.y }
    }
}

impl Sub for GoldenB {
    type Output = GoldenB;
    fn sub(self, o: GoldenB) -> GoldenB {
        GoldenB { x: self.x - o.x, y: self.y - o.y }
    }
}

impl Mul for GoldenB {
    type Output = GoldenB;
    fn mul(self, o: GoldenB) -> GoldenB {
        let b_squared = Golden { p: -1, q: 1 };
        GoldenB { x: self.x * o.x + self.y * o.y * b_squared, y: self.x * o.y + self.y * o.x }
    }
}

impl fmt::Display for GoldenB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}φ) + ({} + {}φ)b", self.x.p, self.x.q, self.y.p, self.y.q)
    }
}

/// Value of a symbolic entry at `δ = φ` (or `-φ` when `negative`).
pub fn entry_value(e: Entry, negative: bool) -> GoldenB {
    let sign = if negative { -1 } else { 1 };
    let s = Golden { p: sign, q: 0 };
    match e {
        Entry::Delta => GoldenB::from_golden(s * Golden::PHI),
        Entry::A => GoldenB::from_golden(s * Golden { p: -1, q: 1 }),
        Entry::B => GoldenB::B,
        Entry::DeltaBSquared => GoldenB::from_golden(s),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    cells: Vec<GoldenB>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, cells: vec![GoldenB::ZERO; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> GoldenB {
        self.cells[row * self.dim + col]
    }

    fn set(&mut self, row: usize, col: usize, v: GoldenB) {
        self.cells[row * self.dim + col] = v;
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        let d = self.dim;
        let mut out = ExactMatrix::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let v = self.get(r, k);
                if v.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let w = o.get(k, c);
                    if !w.is_zero() {
                        out.set(r, c, out.get(r, c) + v * w);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix { dim: self.dim, cells: self.cells.iter().zip(&o.cells).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, s: GoldenB) -> ExactMatrix {
        ExactMatrix { dim: self.dim, cells: self.cells.iter().map(|a| *a * s).collect() }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(GoldenB::is_zero)
    }

    /// Largest absolute entry, evaluated in floating point.
    pub fn max_abs(&self) -> f64 {
        self.cells.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }
}

/// `U_i` on the sequences of length `n` with exact entries at `δ = ±φ`.
pub fn exact_generator(n: usize, i: usize, negative: bool, right_end: RightEnd) -> Result<ExactMatrix> {
    let pattern = fibrep::tl_generator_pattern(n, i, right_end)?;
    let dim = FibBasis::new(n)?.len();
    let mut m = ExactMatrix::zeros(dim);
    for (r, c, e) in pattern {
        m.set(r, c, m.get(r, c) + entry_value(e, negative));
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactRelation {
    pub relation: &'static str,
    pub checked: usize,
    /// Instances whose difference matrix is not identically zero.
    pub failures: usize,
}

/// The Temperley-Lieb relations and generator symmetry, checked exactly.
pub fn exact_relations(n: usize, negative: bool, right_end: RightEnd) -> Result<Vec<ExactRelation>> {
    let us: Vec<ExactMatrix> =
        (1..=n + 1).map(|i| exact_generator(n, i, negative, right_end)).collect::<Result<_>>()?;
    let delta = entry_value(Entry::Delta, negative);
    let mut idem = ExactRelation { relation: fibrep::relation::IDEMPOTENT, checked: 0, failures: 0 };
    let mut adj = ExactRelation { relation: fibrep::relation::ADJACENT, checked: 0, failures: 0 };
    let mut far = ExactRelation { relation: fibrep::relation::FAR_COMMUTE, checked: 0, failures: 0 };
    let mut sym = ExactRelation { relation: fibrep::relation::SYMMETRIC, checked: 0, failures: 0 };
    let tally = |rel: &mut ExactRelation, diff: ExactMatrix| {
        rel.checked += 1;
        rel.failures += usize::from(!diff.is_zero());
    };
    for (i, u) in us.iter().enumerate() {
        tally(&mut idem, u.mul(u).sub(&u.scale(delta)));
        tally(&mut sym, u.sub(&u.transpose()));
        for (j, w) in us.iter().enumerate() {
            if i.abs_diff(j) == 1 {
                tally(&mut adj, u.mul(w).mul(u).sub(u));
            } else if j > i + 1 {
                tally(&mut far, u.mul(w).sub(&w.mul(u)));
            }
        }
    }
    Ok(vec![idem, adj, far, sym])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_identities() {
        assert_eq!(Golden::PHI * Golden::PHI, Golden::PHI + Golden::ONE);
        let b = GoldenB::B;
        assert_eq!(b * b, GoldenB::from_golden(Golden::PHI - Golden::ONE));
        // δ b^2 = 1 and a δ = 1 at δ = φ
        let d = entry_value(Entry::Delta, false);
        assert_eq!(d * b * b, GoldenB::from_golden(Golden::ONE));
        assert_eq!(d * entry_value(Entry::A, false), GoldenB::from_golden(Golden::ONE));
        assert_eq!(
            entry_value(Entry::Delta, true) * entry_value(Entry::A, true),
            GoldenB::from_golden(Golden::ONE)
        );
    }

    #[test]
    fn values_agree_with_floating_point() {
        for negative in [false, true] {
            let params = fibrep::ModelParams::fibonacci(negative);
            for e in [Entry::Delta, Entry::A, Entry::B, Entry::DeltaBSquared] {
                assert!((entry_value(e, negative).to_f64() - e.value(&params)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn relations_hold_exactly() {
        for negative in [false, true] {
            for n in 1..=6 {
                for rel in exact_relations(n, negative, RightEnd::Uniform).unwrap() {
                    assert_eq!(rel.failures, 0, "n={n} {rel:?}");
                }
            }
        }
    }

    #[test]
    fn literal_right_end_fails_exactly() {
        let rels = exact_relations(2, false, RightEnd::Literal).unwrap();
        assert!(rels[0].failures > 0);
        assert!(rels[3].failures > 0);
    }
}
