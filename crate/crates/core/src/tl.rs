//! The diagrammatic Temperley-Lieb algebra `TL_n`.
//!
//! A basis diagram is a non-crossing perfect matching of `2n` boundary
//! points. Top endpoints are labelled `0..n` left to right and bottom
//! endpoints `n..2n` left to right. Products stack the left factor above the
//! right one; every closed loop created in the middle contributes a factor
//! of `δ = -A^2 - A^-2`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Upper bound on `n` for [`PlanarPairing::enumerate`].
pub const ENUMERATION_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPairing")]
pub struct PlanarPairing {
    n: usize,
    partner: Vec<usize>,
}

#[derive(Deserialize)]
struct RawPairing {
    n: usize,
    partner: Vec<usize>,
}

impl TryFrom<RawPairing> for PlanarPairing {
    type Error = Error;

    fn try_from(raw: RawPairing) -> Result<Self> {
        PlanarPairing::new(raw.n, raw.partner)
    }
}

impl PlanarPairing {
    /// Validates that `partner` is a fixed-point-free involution on `2n`
    /// labels whose chords do not cross.
    pub fn new(n: usize, partner: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDiagram);
        }
        if partner.len() != 2 * n {
            return Err(Error::InvalidPairing(format!(
                "expected {} endpoints, got {}",
                2 * n,
                partner.len()
            )));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= 2 * n || j == i || partner[j] != i {
                return Err(Error::InvalidPairing(format!("endpoint {i} is not properly paired")));
            }
        }
        let d = Self { n, partner };
        if let Some((p, q)) = d.find_crossing() {
            return Err(Error::InvalidPairing(format!("chords at {p} and {q} cross")));
        }
        Ok(d)
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDiagram);
        }
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        Ok(Self { n, partner })
    }

    /// `U_i` for `1 <= i <= n-1`: a cap on top endpoints `i-1, i`, a cup on
    /// the matching bottom endpoints, vertical strands elsewhere.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::GeneratorIndex { index: i, size: n });
        }
        let mut d = Self::identity(n)?;
        let (l, r) = (i - 1, i);
        d.partner[l] = r;
        d.partner[r] = l;
        d.partner[n + l] = n + r;
        d.partner[n + r] = n + l;
        Ok(d)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// Position of a label in the cyclic boundary order
    /// (top left to right, then bottom right to left).
    fn cyclic_position(&self, label: usize) -> usize {
        if label < self.n {
            label
        } else {
            3 * self.n - 1 - label
        }
    }

    fn find_crossing(&self) -> Option<(usize, usize)> {
        let chords: Vec<(usize, usize, usize)> = (0..2 * self.n)
            .filter(|&i| i < self.partner[i])
            .map(|i| {
                let (a, b) = (self.cyclic_position(i), self.cyclic_position(self.partner[i]));
                (a.min(b), a.max(b), i)
            })
            .collect();
        for (k, &(p, q, i)) in chords.iter().enumerate() {
            for &(r, s, j) in &chords[k + 1..] {
                if (p < r && r < q && q < s) || (r < p && p < s && s < q) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Stacks `self` above `other`. Returns the product diagram and the
    /// number of closed loops formed along the glued boundary.
    pub fn compose(&self, other: &PlanarPairing) -> Result<(PlanarPairing, usize)> {
        let n = self.n;
        if n != other.n {
            return Err(Error::SizeMismatch(n, other.n));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        let mut middle_seen = vec![false; n];

        // Walks from an outer endpoint through the middle row until it exits.
        let walk = |mut in_upper: bool, mut label: usize, seen: &mut Vec<bool>| -> usize {
            loop {
                if in_upper {
                    let q = self.partner[label];
                    if q < n {
                        return q;
                    }
                    seen[q - n] = true;
                    in_upper = false;
                    label = q - n;
                } else {
                    let r = other.partner[label];
                    if r >= n {
                        return r;
                    }
                    seen[r] = true;
                    in_upper = true;
                    label = r + n;
                }
            }
        };

        for t in 0..n {
            if partner[t] == usize::MAX {
                let end = walk(true, t, &mut middle_seen);
                partner[t] = end;
                partner[end] = t;
            }
        }
        for s in n..2 * n {
            if partner[s] == usize::MAX {
                let end = walk(false, s, &mut middle_seen);
                partner[s] = end;
                partner[end] = s;
            }
        }

        let mut loops = 0;
        for m in 0..n {
            if middle_seen[m] {
                continue;
            }
            loops += 1;
            let mut cur = m;
            loop {
                middle_seen[cur] = true;
                let down = self.partner[cur + n] - n;
                middle_seen[down] = true;
                cur = other.partner[down];
                if cur == m {
                    break;
                }
            }
        }
        Ok((PlanarPairing { n, partner }, loops))
    }

    /// Loops in the standard closure (top `i` joined to bottom `i`).
    pub fn trace_loops(&self) -> usize {
        let n = self.n;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                let across = self.partner[cur];
                seen[across] = true;
                cur = if across < n { across + n } else { across - n };
            }
        }
        loops
    }

    /// All non-crossing pairings of size `n`, sorted by partner array.
    pub fn enumerate(n: usize) -> Result<Vec<PlanarPairing>> {
        if n == 0 || n > ENUMERATION_CAP {
            return Err(Error::OutOfRange { what: "n", value: n, min: 1, max: ENUMERATION_CAP });
        }
        let mut matchings = Vec::new();
        let mut current = vec![usize::MAX; 2 * n];
        fill_matchings(&mut current, &mut matchings);

        let label = |pos: usize| if pos < n { pos } else { 3 * n - 1 - pos };
        let mut out: Vec<PlanarPairing> = matchings
            .into_iter()
            .map(|by_pos| {
                let mut partner = vec![0; 2 * n];
                for (p, &q) in by_pos.iter().enumerate() {
                    partner[label(p)] = label(q);
                }
                PlanarPairing { n, partner }
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

// Enumerates non-crossing matchings of cyclic positions: the first free
// position pairs with some later free position leaving an even gap inside.
fn fill_matchings(current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let Some(first) = current.iter().position(|&p| p == usize::MAX) else {
        out.push(current.clone());
        return;
    };
    let mut inside_free = 0;
    for second in first + 1..current.len() {
        if current[second] != usize::MAX {
            // already matched positions belong to an enclosing region; stop
            break;
        }
        if inside_free % 2 == 0 {
            current[first] = second;
            current[second] = first;
            fill_matchings(current, out);
            current[first] = usize::MAX;
            current[second] = usize::MAX;
        }
        inside_free += 1;
    }
}

/// A formal `Z[A, A^-1]`-linear combination of diagrams of one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    terms: BTreeMap<PlanarPairing, LaurentPoly>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::from_diagram(PlanarPairing::identity(n)?))
    }

    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(PlanarPairing::generator(n, i)?))
    }

    pub fn from_diagram(d: PlanarPairing) -> Self {
        Self::term(LaurentPoly::one(), d)
    }

    pub fn term(coeff: LaurentPoly, d: PlanarPairing) -> Self {
        let mut e = Self::zero(d.n);
        e.add_term(d, coeff);
        e
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &PlanarPairing) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    /// Terms in canonical order (diagrams sorted by partner array).
    pub fn terms(&self) -> impl Iterator<Item = (&PlanarPairing, &LaurentPoly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, d: PlanarPairing, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TLElement) -> Result<TLElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &LaurentPoly) -> TLElement {
        let mut out = TLElement::zero(self.n);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &TLElement) -> Result<TLElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let powers = DeltaPowers::new(self.n);
        let mut out = TLElement::zero(self.n);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                let (d, loops) = d1.compose(d2)?;
                out.add_term(d, &(c1 * c2) * powers.get(loops));
            }
        }
        Ok(out)
    }

    /// `tr(e) = Σ c_d · δ^{||d|| - 1}`.
    pub fn markov_trace(&self) -> LaurentPoly {
        let powers = DeltaPowers::new(self.n);
        let mut out = LaurentPoly::zero();
        for (d, c) in &self.terms {
            out.add_assign_ref(&(c * powers.get(d.trace_loops() - 1)));
        }
        out
    }

    /// The image of a braid word under `σ_i ↦ A·I + A^-1·U_i`,
    /// `σ_i^-1 ↦ A^-1·I + A·U_i`, accumulated one letter at a time.
    pub fn from_braid(b: &BraidWord) -> Result<TLElement> {
        let n = b.strands();
        let powers = DeltaPowers::new(n);
        let mut acc = TLElement::identity(n)?;
        let a = LaurentPoly::monomial(1, 1);
        let a_inv = LaurentPoly::monomial(1, -1);
        for &l in b.letters() {
            let u = PlanarPairing::generator(n, l.unsigned_abs() as usize)?;
            let (c_id, c_u) = if l > 0 { (&a, &a_inv) } else { (&a_inv, &a) };
            let mut next = TLElement::zero(n);
            for (d, c) in &acc.terms {
                next.add_term(d.clone(), c * c_id);
                let (du, loops) = d.compose(&u)?;
                next.add_term(du, &(c * c_u) * powers.get(loops));
            }
            acc = next;
        }
        Ok(acc)
    }
}

impl Serialize for TLElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (d, c) in &self.terms {
            seq.serialize_element(&(d, c))?;
        }
        seq.end()
    }
}

/// Outcome of one family of exact relation checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCheck {
    pub relation: &'static str,
    pub checked: usize,
    pub failures: usize,
}

/// `n`-th Catalan number.
pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Runs the defining relations of `TL_n`, the braid relations of its image,
/// trace symmetry over all basis pairs, and the basis count.
pub fn verify_relations(n: usize) -> Result<Vec<ExactCheck>> {
    let gens: Vec<TLElement> = (1..n).map(|i| TLElement::generator(n, i)).collect::<Result<_>>()?;
    let delta = LaurentPoly::delta();
    let mut idempotent = ExactCheck { relation: "U_i^2 = delta U_i", checked: 0, failures: 0 };
    let mut adjacent = ExactCheck { relation: "U_i U_i+-1 U_i = U_i", checked: 0, failures: 0 };
    let mut far = ExactCheck { relation: "U_i U_j = U_j U_i", checked: 0, failures: 0 };
    let mut inverse = ExactCheck { relation: "rep(s_i) rep(s_i^-1) = I", checked: 0, failures: 0 };
    let mut braid = ExactCheck { relation: "braid relation", checked: 0, failures: 0 };
    let record = |check: &mut ExactCheck, ok: bool| {
        check.checked += 1;
        check.failures += usize::from(!ok);
    };

    let identity = TLElement::identity(n)?;
    for (i, u) in gens.iter().enumerate() {
        record(&mut idempotent, u.mul(u)? == u.scale(&delta));
        for (j, w) in gens.iter().enumerate() {
            if i.abs_diff(j) == 1 {
                record(&mut adjacent, u.mul(w)?.mul(u)? == *u);
            } else if i.abs_diff(j) > 1 {
                record(&mut far, u.mul(w)? == w.mul(u)?);
            }
        }
        let g = i as i32 + 1;
        let s = TLElement::from_braid(&BraidWord::new(n, vec![g])?)?;
        let s_inv = TLElement::from_braid(&BraidWord::new(n, vec![-g])?)?;
        record(&mut inverse, s.mul(&s_inv)? == identity);
        if i + 2 < n {
            let lhs = TLElement::from_braid(&BraidWord::new(n, vec![g, g + 1, g])?)?;
            let rhs = TLElement::from_braid(&BraidWord::new(n, vec![g + 1, g, g + 1])?)?;
            record(&mut braid, lhs == rhs);
        }
    }

    // tr(d1 d2) = δ^{loops + ||d1 d2|| - 1}; distinct powers of δ are distinct
    // polynomials, so comparing total exponents is exact.
    let basis = PlanarPairing::enumerate(n)?;
    let mut trace = ExactCheck { relation: "tr(ab) = tr(ba)", checked: 0, failures: 0 };
    for d1 in &basis {
        for d2 in &basis {
            let (p, lp) = d1.compose(d2)?;
            let (q, lq) = d2.compose(d1)?;
            record(&mut trace, lp + p.trace_loops() == lq + q.trace_loops());
        }
    }
    let catalan_check = ExactCheck {
        relation: "basis count = Catalan(n)",
        checked: 1,
        failures: usize::from(basis.len() as u64 != catalan(n)),
    };
    Ok(vec![idempotent, adjacent, far, inverse, braid, trace, catalan_check])
}

struct DeltaPowers(Vec<LaurentPoly>);

impl DeltaPowers {
    fn new(n: usize) -> Self {
        let delta = LaurentPoly::delta();
        let mut v = vec![LaurentPoly::one()];
        for k in 1..=n {
            let next = &v[k - 1] * &delta;
            v.push(next);
        }
        Self(v)
    }

    fn get(&self, k: usize) -> &LaurentPoly {
        &self.0[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(n: usize, pairs: &[(usize, usize)]) -> PlanarPairing {
        let mut partner = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            partner[a] = b;
            partner[b] = a;
        }
        PlanarPairing::new(n, partner).unwrap()
    }

    #[test]
    fn identities() {
        assert_eq!(PlanarPairing::identity(1).unwrap(), pp(1, &[(0, 1)]));
        assert_eq!(PlanarPairing::identity(2).unwrap(), pp(2, &[(0, 2), (1, 3)]));
        assert_eq!(PlanarPairing::identity(3).unwrap(), pp(3, &[(0, 3), (1, 4), (2, 5)]));
        assert!(PlanarPairing::identity(0).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(PlanarPairing::generator(2, 1).unwrap(), pp(2, &[(0, 1), (2, 3)]));
        assert_eq!(PlanarPairing::generator(3, 1).unwrap(), pp(3, &[(0, 1), (3, 4), (2, 5)]));
        assert_eq!(PlanarPairing::generator(3, 2).unwrap(), pp(3, &[(1, 2), (4, 5), (0, 3)]));
        assert!(PlanarPairing::generator(3, 0).is_err());
        assert!(PlanarPairing::generator(3, 3).is_err());
    }

    #[test]
    fn rejects_bad_pairings() {
        // crossing strands (the permutation diagram of a transposition)
        assert!(PlanarPairing::new(2, vec![3, 2, 1, 0]).is_err());
        // not an involution
        assert!(PlanarPairing::new(2, vec![1, 2, 3, 0]).is_err());
        // fixed point
        assert!(PlanarPairing::new(1, vec![0, 1]).is_err());
        assert!(PlanarPairing::new(2, vec![1, 0]).is_err());
    }

    #[test]
    fn compose_relations() {
        let u1 = PlanarPairing::generator(2, 1).unwrap();
        assert_eq!(u1.compose(&u1).unwrap(), (u1.clone(), 1));

        let u1 = PlanarPairing::generator(3, 1).unwrap();
        let u2 = PlanarPairing::generator(3, 2).unwrap();
        let (x, l1) = u1.compose(&u2).unwrap();
        let (y, l2) = x.compose(&u1).unwrap();
        assert_eq!((y, l1 + l2), (u1.clone(), 0));

        let id = PlanarPairing::identity(3).unwrap();
        for d in PlanarPairing::enumerate(3).unwrap() {
            assert_eq!(id.compose(&d).unwrap(), (d.clone(), 0));
            assert_eq!(d.compose(&id).unwrap(), (d.clone(), 0));
        }
        let other = PlanarPairing::identity(2).unwrap();
        assert!(id.compose(&other).is_err());
    }

    #[test]
    fn trace_loop_counts() {
        for n in 1..6 {
            assert_eq!(PlanarPairing::identity(n).unwrap().trace_loops(), n);
        }
        assert_eq!(PlanarPairing::generator(2, 1).unwrap().trace_loops(), 1);
        assert_eq!(PlanarPairing::generator(3, 1).unwrap().trace_loops(), 2);
    }

    #[test]
    fn enumeration_counts() {
        let two = PlanarPairing::enumerate(2).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.contains(&PlanarPairing::identity(2).unwrap()));
        assert!(two.contains(&PlanarPairing::generator(2, 1).unwrap()));
        assert_eq!(PlanarPairing::enumerate(3).unwrap().len(), 5);
        assert_eq!(PlanarPairing::enumerate(4).unwrap().len(), 14);
        assert!(PlanarPairing::enumerate(0).is_err());
        assert!(PlanarPairing::enumerate(13).is_err());
    }

    #[test]
    fn element_products() {
        let u = TLElement::generator(2, 1).unwrap();
        let uu = u.mul(&u).unwrap();
        assert_eq!(uu, u.scale(&LaurentPoly::delta()));

        let e = TLElement::from_braid(&BraidWord::parse("1 -1 1", 2).unwrap()).unwrap();
        let id = TLElement::identity(2).unwrap();
        assert_eq!(id.mul(&e).unwrap(), e);

        // (A I + A^-1 U)(A^-1 I + A U) = I
        let s = TLElement::from_braid(&BraidWord::parse("1", 2).unwrap()).unwrap();
        let s_inv = TLElement::from_braid(&BraidWord::parse("-1", 2).unwrap()).unwrap();
        assert_eq!(s.mul(&s_inv).unwrap(), id);
        assert!(s.mul(&TLElement::identity(3).unwrap()).is_err());
    }

    #[test]
    fn rep_of_small_words() {
        let id = TLElement::identity(2).unwrap();
        let u = PlanarPairing::generator(2, 1).unwrap();
        assert_eq!(TLElement::from_braid(&BraidWord::identity(2).unwrap()).unwrap(), id);

        let s = TLElement::from_braid(&BraidWord::parse("1", 2).unwrap()).unwrap();
        assert_eq!(s.coeff(&PlanarPairing::identity(2).unwrap()), LaurentPoly::monomial(1, 1));
        assert_eq!(s.coeff(&u), LaurentPoly::monomial(1, -1));

        // (A I + A^-1 U)^3 = A^3 I + (3A + 3A^-1 δ + A^-3 δ^2) U
        let s3 = TLElement::from_braid(&BraidWord::parse("1 1 1", 2).unwrap()).unwrap();
        let d = LaurentPoly::delta();
        let expected_u = LaurentPoly::monomial(3, 1)
            + &LaurentPoly::monomial(3, -1) * &d
            + &LaurentPoly::monomial(1, -3) * &d.pow(2);
        assert_eq!(s3.coeff(&PlanarPairing::identity(2).unwrap()), LaurentPoly::monomial(1, 3));
        assert_eq!(s3.coeff(&u), expected_u);
        assert_eq!(s3.len(), 2);
    }

    #[test]
    fn traces() {
        let d = LaurentPoly::delta();
        assert_eq!(TLElement::identity(2).unwrap().markov_trace(), d);
        assert!(TLElement::generator(2, 1).unwrap().markov_trace().is_one());
        let s = TLElement::from_braid(&BraidWord::parse("1", 2).unwrap()).unwrap();
        assert_eq!(s.markov_trace(), LaurentPoly::monomial(-1, 3));
    }

    #[test]
    fn relation_suite_small() {
        for n in 1..=5 {
            for check in verify_relations(n).unwrap() {
                assert_eq!(check.failures, 0, "n = {n}: {check:?}");
            }
        }
        assert_eq!(catalan(0), 1);
        assert_eq!(catalan(10), 16796);
    }

    #[test]
    fn json_forms() {
        let u = PlanarPairing::generator(2, 1).unwrap();
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"n":2,"partner":[1,0,3,2]}"#);
        assert_eq!(serde_json::from_str::<PlanarPairing>(&s).unwrap(), u);
        assert!(serde_json::from_str::<PlanarPairing>(r#"{"n":2,"partner":[3,2,1,0]}"#).is_err());

        let e = TLElement::from_braid(&BraidWord::parse("1", 2).unwrap()).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(
            s,
            r#"[[{"n":2,"partner":[1,0,3,2]},[[-1,"1"]]],[{"n":2,"partner":[2,3,0,1]},[[1,"1"]]]]"#
        );
    }
}
