//! Exact polynomial and group-ring arithmetic, the derived knot invariants,
//! and the bounded zero-class scan.
//!
//! Everything is computed over the integers; values are canonical sparse
//! maps with no stored zero coefficients, so equality of invariants is
//! structural equality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::diagram::{gauss_diagram, GaussDiagram, SurfaceDiagram};
use crate::homology::{
    admissible_subgroup_basis, diagram_class, reduce_mod_cyclic, HomologyClass,
};
use crate::indices::{
    all_chord_indices, fiedler_index, gauss_index, group_index, regular_index, IndexError,
};

/// A univariate Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<BigInt, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exponent: BigInt, coeff: BigInt) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exponent, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponent: BigInt, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// Substitution `t -> t^(-1)`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in pairs {
            p.add_term(e.into(), c.into());
        }
        p
    }
}

impl std::fmt::Display for LaurentPoly {
    /// Canonical form `c1*t^e1 + c2*t^e2 + ...` sorted by exponent; the zero
    /// polynomial prints as `0`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

/// An element of `Z[s^(+/-1)] / (s^m - 1)` in canonical reduced form.
///
/// `modulus = 0` means no reduction (the full Laurent ring), `modulus = 1`
/// collapses every exponent to zero, and for `m >= 2` exponents live in
/// `0..m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicPoly {
    modulus: BigInt,
    terms: BTreeMap<BigInt, BigInt>,
}

impl CyclicPoly {
    pub fn zero(modulus: BigInt) -> Self {
        let modulus = modulus.abs();
        CyclicPoly {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn reduce(&self, exponent: BigInt) -> BigInt {
        if self.modulus.is_zero() {
            exponent
        } else {
            exponent.mod_floor(&self.modulus)
        }
    }

    pub fn add_term(&mut self, exponent: BigInt, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let exponent = self.reduce(exponent);
        let entry = self.terms.entry(exponent.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.terms.iter()
    }
}

impl std::fmt::Display for CyclicPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, (e, c)) in self.terms.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                write!(f, "{c}*s^{e}")?;
            }
        }
        if !self.modulus.is_zero() {
            write!(f, " (mod s^{} - 1)", self.modulus)?;
        }
        Ok(())
    }
}

/// A finitely supported integer combination of homology classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    terms: BTreeMap<HomologyClass, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, class: HomologyClass, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(class.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomologyClass, &BigInt)> {
        self.terms.iter()
    }
}

impl std::fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (class, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}*[{class}]")?;
        }
        Ok(())
    }
}

/// A group-ring element whose coefficients are linear forms `a x + b y` in
/// two commuting variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegularInvariant {
    terms: BTreeMap<HomologyClass, (BigInt, BigInt)>,
}

impl RegularInvariant {
    pub fn zero() -> Self {
        RegularInvariant::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, class: HomologyClass, x: BigInt, y: BigInt) {
        if x.is_zero() && y.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(class.clone())
            .or_insert_with(|| (BigInt::zero(), BigInt::zero()));
        entry.0 += x;
        entry.1 += y;
        if entry.0.is_zero() && entry.1.is_zero() {
            self.terms.remove(&class);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomologyClass, &(BigInt, BigInt))> {
        self.terms.iter()
    }

    /// Substitutes `x = y = 1`.
    pub fn substitute_ones(&self) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (class, (x, y)) in &self.terms {
            out.add_term(class.clone(), x + y);
        }
        out
    }
}

/// The transcendental invariant: an integer-weighted multiset of
/// `(index value, reduced exponent polynomial)` pairs. Keys with different
/// index values never merge even when both polynomials vanish.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalSum {
    terms: BTreeMap<(BigInt, CyclicPoly), BigInt>,
}

impl FormalSum {
    pub fn zero() -> Self {
        FormalSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: BigInt, poly: CyclicPoly, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (k, poly);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(BigInt, CyclicPoly), &BigInt)> {
        self.terms.iter()
    }

    /// Collapses each `t_k` to `t^k`, forgetting the exponent polynomials.
    /// The result is the writhe polynomial shifted by its value at 1.
    pub fn collapse_to_laurent(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for ((k, _), coeff) in &self.terms {
            out.add_term(k.clone(), coeff.clone());
        }
        out
    }
}

/// `W(t) = sum over crossings with nonzero chord index of w(c) t^(f(c))`.
pub fn writhe_polynomial(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
) -> Result<LaurentPoly, IndexError> {
    let mut poly = LaurentPoly::zero();
    for (c, f) in all_chord_indices(d, alpha)? {
        if !f.is_zero() {
            poly.add_term(f, d.sign(c).unwrap().value().into());
        }
    }
    Ok(poly)
}

/// The positional writhe polynomial of a Gauss diagram. With
/// `normalized = true` the value at `t = 1` is subtracted, i.e. the zero-index
/// crossings contribute and the total writhe is removed.
pub fn virtual_writhe_polynomial(g: &GaussDiagram, normalized: bool) -> LaurentPoly {
    let mut poly = LaurentPoly::zero();
    let mut writhe = BigInt::zero();
    for chord in g.chords() {
        let ind = gauss_index(g, chord.id).expect("chord of this diagram");
        writhe += chord.sign.value();
        if normalized || ind != 0 {
            poly.add_term(ind.into(), chord.sign.value().into());
        }
    }
    if normalized {
        poly.add_term(BigInt::zero(), -writhe);
    }
    poly
}

/// The group-ring invariant `sum_c w(c) ([left_c] + [right_c])` with the
/// kink term `w(D) ([K] + [0])` removed.
///
/// A first-move kink contributes its sign at both `[K]` and `[0]`, so the
/// correction must remove both; removing only the `[K]` part would change
/// the value under first moves.
pub fn group_ring_invariant(d: &SurfaceDiagram) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for c in d.crossing_ids() {
        let w = BigInt::from(d.sign(c).unwrap().value());
        for (class, coeff) in group_index(d, c).unwrap().terms() {
            out.add_term(class.clone(), &w * coeff);
        }
    }
    let writhe = BigInt::from(d.writhe());
    out.add_term(diagram_class(d), -&writhe);
    out.add_term(HomologyClass::zero(2 * d.genus() as usize), -writhe);
    out
}

/// The small state sum: sign-selected smoothing classes reduced modulo the
/// cyclic subgroup generated by `[K]`, with `w(D)` removed at the zero coset.
pub fn small_state_sum(d: &SurfaceDiagram) -> GroupRingElement {
    let k = diagram_class(d);
    let mut out = GroupRingElement::zero();
    for c in d.crossing_ids() {
        let w = BigInt::from(d.sign(c).unwrap().value());
        let class = reduce_mod_cyclic(&fiedler_index(d, c).unwrap(), &k);
        out.add_term(class, w);
    }
    let zero = reduce_mod_cyclic(&HomologyClass::zero(2 * d.genus() as usize), &k);
    out.add_term(zero, -BigInt::from(d.writhe()));
    out
}

/// The regular-isotopy invariant `sum_c w(c) g_reg(c)`; no kink correction.
pub fn regular_invariant(d: &SurfaceDiagram) -> RegularInvariant {
    let mut out = RegularInvariant::zero();
    for c in d.crossing_ids() {
        let w = BigInt::from(d.sign(c).unwrap().value());
        let idx = regular_index(d, c).unwrap();
        out.add_term(idx.x_class, w.clone(), BigInt::zero());
        out.add_term(idx.y_class, BigInt::zero(), w);
    }
    out
}

/// The transcendental invariant: each crossing contributes its sign at key
/// `(f(c), g_c(s))`, and the writhe is removed at the key `(0, 0)`.
pub fn transcendental_invariant(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
) -> Result<FormalSum, IndexError> {
    let f: std::collections::BTreeMap<_, _> =
        all_chord_indices(d, alpha)?.into_iter().collect();
    let g = gauss_diagram(d);
    let mut out = FormalSum::zero();
    for (&c, fc) in &f {
        let poly = crate::indices::index_function_from_parts(&g, &f, c);
        out.add_term(fc.clone(), poly, d.sign(c).unwrap().value().into());
    }
    out.add_term(
        BigInt::zero(),
        CyclicPoly::zero(BigInt::zero()),
        -BigInt::from(d.writhe()),
    );
    Ok(out)
}

/// All nontrivial admissible classes with coordinates at most `bound` (in
/// absolute value) in the admissible-subgroup basis whose writhe polynomial
/// vanishes. An empty result rules out witnesses within the bound only; it
/// proves nothing beyond it.
pub fn zero_class_scan(d: &SurfaceDiagram, bound: u32) -> Vec<HomologyClass> {
    assert!(bound >= 1, "bound must be positive");
    let basis = admissible_subgroup_basis(d);
    let mut out = Vec::new();
    let rank = basis.len();
    if rank == 0 {
        return out;
    }
    let span = 2 * bound as usize + 1;
    let total = span.pow(rank as u32);
    for code in 0..total {
        let mut rest = code;
        let mut coeffs = Vec::with_capacity(rank);
        for _ in 0..rank {
            let digit = (rest % span) as i64 - bound as i64;
            coeffs.push(digit);
            rest /= span;
        }
        // enumeration order: lexicographic in the basis coefficients
        coeffs.reverse();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut alpha = HomologyClass::zero(2 * d.genus() as usize);
        for (c, v) in coeffs.iter().zip(&basis) {
            alpha = alpha.add(&v.scale(&BigInt::from(*c)));
        }
        if writhe_polynomial(d, &alpha)
            .expect("basis classes are admissible")
            .is_zero()
        {
            out.push(alpha);
        }
    }
    out
}

/// Convenience wrapper: the Gauss diagram is extracted on the fly.
pub fn virtual_writhe_of_diagram(d: &SurfaceDiagram, normalized: bool) -> LaurentPoly {
    virtual_writhe_polynomial(&gauss_diagram(d), normalized)
}
