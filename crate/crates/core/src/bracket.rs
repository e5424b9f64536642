//! Bracket polynomial of braid closures, computed two independent ways.
//!
//! [`bracket_state_sum`] enumerates all `2^N` smoothings of the closed
//! diagram and counts loops with a union-find over arc segments; it never
//! touches Temperley-Lieb diagrams. [`bracket_via_tl`] takes the Markov
//! trace of the braid's image in `TL_n`. The two agree exactly.

use std::collections::HashMap;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::{JonesPoly, LaurentPoly};
use crate::tl::TLElement;

/// Largest crossing count accepted by the state-sum evaluator.
pub const STATE_SUM_CAP: usize = 24;

/// One state of the closed braid diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSummand {
    /// `true` where the crossing is replaced by a cup-cap, `false` where the
    /// two strands pass straight through.
    pub choices: Vec<bool>,
    /// Product of vertex weights, a monomial `A^e`.
    pub weight: LaurentPoly,
    pub loops: usize,
}

/// Which evaluator produces the bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluator {
    TemperleyLieb,
    StateSum,
}

impl Evaluator {
    pub fn bracket(self, b: &BraidWord) -> Result<LaurentPoly> {
        match self {
            Evaluator::TemperleyLieb => bracket_via_tl(b),
            Evaluator::StateSum => bracket_state_sum(b),
        }
    }
}

// Vertex weight exponent: a positive crossing weighs A when passed straight
// through and A^-1 when smoothed into a cup-cap; negative crossings swap.
fn weight_exp(letter: i32, cup_cap: bool) -> i64 {
    match (letter > 0, cup_cap) {
        (true, false) | (false, true) => 1,
        (true, true) | (false, false) => -1,
    }
}

/// Exponent of `⟨K|S⟩` and loop count `||S||` for the state encoded by the
/// low `N` bits of `mask` (bit `k` set means crossing `k` is a cup-cap).
fn evaluate_state(b: &BraidWord, mask: u64) -> (i64, usize) {
    let n = b.strands();
    let letters = b.letters();
    let levels = letters.len();
    if levels == 0 {
        return (0, n);
    }
    // Arc segment (level, position) sits just above crossing `level`; the
    // segment below the last crossing is the one above the first (closure).
    let node = |level: usize, pos: usize| (level % levels) * n + pos;
    let mut uf = UnionFind::<usize>::new(levels * n);
    let mut exp = 0;
    for (level, &l) in letters.iter().enumerate() {
        let cup_cap = mask >> level & 1 == 1;
        exp += weight_exp(l, cup_cap);
        let right = l.unsigned_abs() as usize;
        let left = right - 1;
        for pos in 0..n {
            if pos != left && pos != right {
                uf.union(node(level, pos), node(level + 1, pos));
            }
        }
        if cup_cap {
            uf.union(node(level, left), node(level, right));
            uf.union(node(level + 1, left), node(level + 1, right));
        } else {
            uf.union(node(level, left), node(level + 1, left));
            uf.union(node(level, right), node(level + 1, right));
        }
    }
    let mut roots = uf.into_labeling();
    roots.sort_unstable();
    roots.dedup();
    (exp, roots.len())
}

/// The state with index `mask`, for inspection.
pub fn state_summand(b: &BraidWord, mask: u64) -> StateSummand {
    let choices = (0..b.len()).map(|k| mask >> k & 1 == 1).collect();
    let (exp, loops) = evaluate_state(b, mask);
    StateSummand { choices, weight: LaurentPoly::monomial(1, exp), loops }
}

/// `⟨K⟩ = Σ_S ⟨K|S⟩ δ^{||S|| - 1}` over all `2^N` states.
pub fn bracket_state_sum(b: &BraidWord) -> Result<LaurentPoly> {
    let crossings = b.len();
    if crossings > STATE_SUM_CAP {
        return Err(Error::OracleCap { len: crossings, cap: STATE_SUM_CAP });
    }
    // Split the state space on the high bits; each worker tallies
    // (weight exponent, loop count) pairs over the low bits.
    let low_bits = crossings.min(12);
    let high_states: u64 = 1 << (crossings - low_bits);
    let tally = (0..high_states)
        .into_par_iter()
        .map(|high| {
            let mut counts: HashMap<(i64, usize), u64> = HashMap::new();
            for low in 0..1u64 << low_bits {
                let mask = high << low_bits | low;
                *counts.entry(evaluate_state(b, mask)).or_default() += 1;
            }
            counts
        })
        .reduce(HashMap::new, |mut acc, part| {
            for (k, v) in part {
                *acc.entry(k).or_default() += v;
            }
            acc
        });

    let max_loops = tally.keys().map(|&(_, l)| l).max().unwrap_or(1);
    let delta = LaurentPoly::delta();
    let mut powers = vec![LaurentPoly::one()];
    for k in 1..max_loops {
        let next = &powers[k - 1] * &delta;
        powers.push(next);
    }
    let mut out = LaurentPoly::zero();
    for ((exp, loops), count) in tally {
        let weight = LaurentPoly::monomial(BigInt::from(count), exp);
        out.add_assign_ref(&(&weight * &powers[loops - 1]));
    }
    Ok(out)
}

/// `⟨b̄⟩ = tr(rep(b))`.
pub fn bracket_via_tl(b: &BraidWord) -> Result<LaurentPoly> {
    Ok(TLElement::from_braid(b)?.markov_trace())
}

/// Writhe normalization `f = (-A^3)^{-w} ⟨K⟩`.
pub fn normalize(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    &LaurentPoly::monomial(sign, -3 * writhe) * bracket
}

pub fn normalized_bracket(b: &BraidWord) -> Result<LaurentPoly> {
    normalized_bracket_with(b, Evaluator::TemperleyLieb)
}

pub fn normalized_bracket_with(b: &BraidWord, evaluator: Evaluator) -> Result<LaurentPoly> {
    Ok(normalize(&evaluator.bracket(b)?, b.writhe()))
}

/// Jones polynomial in `q = t^{1/4}`.
pub fn jones_polynomial(b: &BraidWord) -> Result<JonesPoly> {
    Ok(normalized_bracket(b)?.jones_substitute())
}

pub fn jones_polynomial_with(b: &BraidWord, evaluator: Evaluator) -> Result<JonesPoly> {
    Ok(normalized_bracket_with(b, evaluator)?.jones_substitute())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralityCertificate {
    pub invariant: LaurentPoly,
    /// `f(A^-1)`.
    pub inverted: LaurentPoly,
    /// `f(A) != f(A^-1)`: the closure differs from its mirror image.
    pub distinct: bool,
    /// Whether the mirror word's invariant equals `f(A^-1)`.
    pub mirror_consistent: bool,
}

pub fn chirality_certificate(b: &BraidWord) -> Result<ChiralityCertificate> {
    let invariant = normalized_bracket(b)?;
    let inverted = invariant.invert_variable();
    let mirror = normalized_bracket(&b.inverse())?;
    Ok(ChiralityCertificate {
        distinct: invariant != inverted,
        mirror_consistent: mirror == inverted,
        invariant,
        inverted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn state_sum_small_closures() {
        assert!(bracket_state_sum(&w("", 1)).unwrap().is_one());
        assert_eq!(bracket_state_sum(&w("", 2)).unwrap(), LaurentPoly::delta());
        assert_eq!(bracket_state_sum(&w("1", 2)).unwrap(), p(&[(3, -1)]));
        assert_eq!(bracket_state_sum(&w("1 1 1", 2)).unwrap(), p(&[(5, -1), (-3, -1), (-7, 1)]));
        assert_eq!(bracket_state_sum(&w("1 1", 2)).unwrap(), p(&[(4, -1), (-4, -1)]));
    }

    #[test]
    fn hopf_link_states_by_hand() {
        // σ1^2: straight/straight gives 2 loops with A^2, mixed states give
        // one loop with A^0 each, cup-cap/cup-cap gives 2 loops with A^-2.
        let b = w("1 1", 2);
        let states: Vec<_> = (0..4).map(|m| state_summand(&b, m)).collect();
        assert_eq!(states[0].weight, p(&[(2, 1)]));
        assert_eq!(states[0].loops, 2);
        assert_eq!(states[1].loops, 1);
        assert_eq!(states[2].loops, 1);
        assert_eq!(states[3].weight, p(&[(-2, 1)]));
        assert_eq!(states[3].loops, 2);
        assert_eq!(states[3].choices, vec![true, true]);
    }

    #[test]
    fn tl_path_small_closures() {
        assert_eq!(bracket_via_tl(&w("1", 2)).unwrap(), p(&[(3, -1)]));
        assert_eq!(bracket_via_tl(&w("1 1 1", 2)).unwrap(), p(&[(5, -1), (-3, -1), (-7, 1)]));
        assert_eq!(bracket_via_tl(&w("-1", 2)).unwrap(), p(&[(-3, -1)]));
    }

    #[test]
    fn normalized_values() {
        assert!(normalized_bracket(&w("1", 2)).unwrap().is_one());
        assert!(normalized_bracket(&w("", 1)).unwrap().is_one());
        assert_eq!(
            normalized_bracket(&w("1 1 1", 2)).unwrap(),
            p(&[(-4, 1), (-12, 1), (-16, -1)])
        );
    }

    #[test]
    fn jones_values() {
        assert!(jones_polynomial(&w("", 1)).unwrap().0.is_one());
        assert_eq!(jones_polynomial(&w("1 1 1", 2)).unwrap().0, p(&[(4, 1), (12, 1), (16, -1)]));
        assert_eq!(
            jones_polynomial(&w("-1 -1 -1", 2)).unwrap().0,
            p(&[(-4, 1), (-12, 1), (-16, -1)])
        );
        // Hopf link: -t^{1/2} - t^{5/2}
        assert_eq!(jones_polynomial(&w("1 1", 2)).unwrap().0, p(&[(2, -1), (10, -1)]));
        // figure eight is amphichiral: t^-2 - t^-1 + 1 - t + t^2
        assert_eq!(
            jones_polynomial(&w("1 -2 1 -2", 3)).unwrap().0,
            p(&[(-8, 1), (-4, -1), (0, 1), (4, -1), (8, 1)])
        );
    }

    #[test]
    fn chirality() {
        let c = chirality_certificate(&w("1 1 1", 2)).unwrap();
        assert!(c.distinct);
        assert!(c.mirror_consistent);
        let c = chirality_certificate(&w("", 1)).unwrap();
        assert!(!c.distinct);
        let c = chirality_certificate(&w("1 -1", 2)).unwrap();
        assert!(!c.distinct);
        // closure of σ1 σ1^-1 is the two-component unlink
        assert_eq!(c.invariant, LaurentPoly::delta());
        let c = chirality_certificate(&w("1 -2 1 -2", 3)).unwrap();
        assert!(!c.distinct && c.mirror_consistent);
    }

    #[test]
    fn oracle_cap() {
        let long = BraidWord::new(2, vec![1; STATE_SUM_CAP + 1]).unwrap();
        assert!(matches!(bracket_state_sum(&long), Err(Error::OracleCap { .. })));
        assert!(bracket_via_tl(&long).is_ok());
    }

    #[test]
    fn parallel_split_matches_small_split() {
        // 14 letters forces more than one high-bit chunk
        let b = w("1 -2 1 1 2 -1 2 1 -2 -2 1 2 1 -1", 3);
        assert_eq!(bracket_state_sum(&b).unwrap(), bracket_via_tl(&b).unwrap());
    }
}
