//! The index constructions: the homology-derived chord index (two
//! independent algorithms), its mod-2 parity, the positional Gauss-diagram
//! index, the group-ring indices, and the cyclic index function.
//!
//! For an admissible class `alpha` (one with `alpha . [D] = 0`), the chord
//! index of a crossing equals `alpha` paired with the class of the
//! under-to-over walk segment. The coloring route recomputes it by walking
//! the diagram and accumulating gate increments; the two must agree
//! everywhere, which the test suites enforce on random inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diagram::{
    CrossingDirection, CrossingId, Event, GaussDiagram, Sign, SurfaceDiagram,
};
use crate::homology::{class_of_events, diagram_class, HomologyClass};
use crate::invariants::{CyclicPoly, GroupRingElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IndexError {
    #[error("class is not admissible: alpha . [D] = {0}")]
    NotAdmissible(BigInt),
    #[error("class is not mod-2 admissible: alpha . [D] = {0}")]
    NotMod2Admissible(BigInt),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("unknown chord {0}")]
    UnknownChord(CrossingId),
    #[error("class has wrong rank for this diagram")]
    RankMismatch,
}

fn check_admissible(d: &SurfaceDiagram, alpha: &HomologyClass) -> Result<(), IndexError> {
    let pairing = alpha
        .intersection(&diagram_class(d))
        .map_err(|_| IndexError::RankMismatch)?;
    if pairing.is_zero() {
        Ok(())
    } else {
        Err(IndexError::NotAdmissible(pairing))
    }
}

/// Homological chord index: `w(c) * (alpha . [right smoothing circle])`.
pub fn chord_index(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
    c: CrossingId,
) -> Result<BigInt, IndexError> {
    check_admissible(d, alpha)?;
    let sign = d.sign(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let pair = d.smooth(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let right = class_of_events(&pair.right.events, d.genus())
        .expect("validated diagram");
    let pairing = alpha.intersection(&right).map_err(|_| IndexError::RankMismatch)?;
    Ok(BigInt::from(sign.value()) * pairing)
}

/// An arc coloring: `colors[i]` is the integer on the arc entering event `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<BigInt>,
}

impl Coloring {
    pub fn colors(&self) -> &[BigInt] {
        &self.colors
    }

    /// Color of the arc containing the event at `pos` (passages do not
    /// change the color, so entering and leaving agree).
    pub fn arc_color(&self, pos: usize) -> &BigInt {
        &self.colors[pos]
    }
}

/// Colors the arcs of the walk: the first arc gets 0 and each side event
/// contributing basis vector `v` with direction `eps` changes the color by
/// `eps * (alpha . v)`. Fails when the walk does not close up, which happens
/// exactly when `alpha . [D] != 0`.
pub fn coloring(d: &SurfaceDiagram, alpha: &HomologyClass) -> Result<Coloring, IndexError> {
    if alpha.rank() != 2 * d.genus() as usize {
        return Err(IndexError::RankMismatch);
    }
    let mut colors = Vec::with_capacity(d.events().len());
    let mut current = BigInt::zero();
    for ev in d.events() {
        colors.push(current.clone());
        if let Event::Side { basis, dir } = *ev {
            current += BigInt::from(dir.value()) * alpha.pair_with_basis(basis);
        }
    }
    if !current.is_zero() {
        return Err(IndexError::NotAdmissible(current));
    }
    Ok(Coloring { colors })
}

/// Coloring route to the chord index: the integer on the over-arc minus the
/// integer on the under-arc. Independent of the homological route.
pub fn chord_index_via_coloring(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
    c: CrossingId,
) -> Result<BigInt, IndexError> {
    let col = coloring(d, alpha)?;
    let (over, under) = d
        .passage_positions(c)
        .map_err(|_| IndexError::UnknownCrossing(c))?;
    Ok(col.arc_color(over) - col.arc_color(under))
}

/// Mod-2 parity of a crossing, defined whenever `alpha . [D]` is even.
/// Runs the coloring with Z_2 coefficients and compares the two arc colors
/// at the crossing.
pub fn parity(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
    c: CrossingId,
) -> Result<u8, IndexError> {
    if alpha.rank() != 2 * d.genus() as usize {
        return Err(IndexError::RankMismatch);
    }
    let pairing = alpha
        .intersection(&diagram_class(d))
        .map_err(|_| IndexError::RankMismatch)?;
    if pairing.is_odd() {
        return Err(IndexError::NotMod2Admissible(pairing));
    }
    let (over_pos, under_pos) = d
        .passage_positions(c)
        .map_err(|_| IndexError::UnknownCrossing(c))?;
    let mut colors = Vec::with_capacity(d.events().len());
    let mut current = 0u8;
    for ev in d.events() {
        colors.push(current);
        if let Event::Side { basis, dir } = *ev {
            let step = BigInt::from(dir.value()) * alpha.pair_with_basis(basis);
            current ^= u8::from(step.is_odd());
        }
    }
    debug_assert_eq!(current, 0, "mod-2 coloring must close up");
    Ok(colors[over_pos] ^ colors[under_pos])
}

/// Positional index of a chord: signed count of interleaving chords,
/// left-to-right ones positively and right-to-left ones negatively.
pub fn gauss_index(g: &GaussDiagram, c: CrossingId) -> Result<i64, IndexError> {
    let chord = *g.chord(c).ok_or(IndexError::UnknownChord(c))?;
    let mut total = 0i64;
    for (other, direction) in g.crossing_chords(&chord) {
        match direction {
            CrossingDirection::LeftToRight => total += other.sign.value(),
            CrossingDirection::RightToLeft => total -= other.sign.value(),
        }
    }
    Ok(total)
}

/// Group-ring index: the formal sum of the two smoothing classes.
pub fn group_index(d: &SurfaceDiagram, c: CrossingId) -> Result<GroupRingElement, IndexError> {
    let pair = d.smooth(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let genus = d.genus();
    let mut out = GroupRingElement::zero();
    out.add_term(
        class_of_events(&pair.left.events, genus).expect("validated diagram"),
        BigInt::from(1),
    );
    out.add_term(
        class_of_events(&pair.right.events, genus).expect("validated diagram"),
        BigInt::from(1),
    );
    Ok(out)
}

/// The single smoothing class selected by the crossing sign: the left circle
/// for positive crossings, the right one for negative crossings.
pub fn fiedler_index(d: &SurfaceDiagram, c: CrossingId) -> Result<HomologyClass, IndexError> {
    let sign = d.sign(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let pair = d.smooth(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let walk = match sign {
        Sign::Plus => &pair.left,
        Sign::Minus => &pair.right,
    };
    Ok(class_of_events(&walk.events, d.genus()).expect("validated diagram"))
}

/// Index for regular isotopy: both smoothing classes, weighted by the two
/// formal variables. `x_class` carries the `x` weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularIndex {
    pub x_class: HomologyClass,
    pub y_class: HomologyClass,
}

/// `x [left] + y [right]` at positive crossings, `y [left] + x [right]` at
/// negative ones. Substituting `x = y = 1` collapses it to the group index.
pub fn regular_index(d: &SurfaceDiagram, c: CrossingId) -> Result<RegularIndex, IndexError> {
    let sign = d.sign(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let pair = d.smooth(c).map_err(|_| IndexError::UnknownCrossing(c))?;
    let genus = d.genus();
    let left = class_of_events(&pair.left.events, genus).expect("validated diagram");
    let right = class_of_events(&pair.right.events, genus).expect("validated diagram");
    Ok(match sign {
        Sign::Plus => RegularIndex {
            x_class: left,
            y_class: right,
        },
        Sign::Minus => RegularIndex {
            x_class: right,
            y_class: left,
        },
    })
}

/// All chord indices of the diagram for one admissible class.
pub fn all_chord_indices(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
) -> Result<Vec<(CrossingId, BigInt)>, IndexError> {
    check_admissible(d, alpha)?;
    d.crossing_ids()
        .map(|c| chord_index(d, alpha, c).map(|v| (c, v)))
        .collect()
}

/// The cyclic index function of a crossing: a weighted count of the chords
/// interleaving it, with exponents given by their chord indices, living in
/// `Z[s^(+/-1)] / (s^|f(c)| - 1)`.
pub fn index_function(
    d: &SurfaceDiagram,
    alpha: &HomologyClass,
    c: CrossingId,
) -> Result<CyclicPoly, IndexError> {
    let f: std::collections::BTreeMap<CrossingId, BigInt> =
        all_chord_indices(d, alpha)?.into_iter().collect();
    if !f.contains_key(&c) {
        return Err(IndexError::UnknownCrossing(c));
    }
    let g = crate::diagram::gauss_diagram(d);
    Ok(index_function_from_parts(&g, &f, c))
}

/// Same computation from a prebuilt Gauss diagram and chord-index table;
/// lets callers that need every crossing avoid quadratic recomputation.
pub fn index_function_from_parts(
    g: &GaussDiagram,
    f: &std::collections::BTreeMap<CrossingId, BigInt>,
    c: CrossingId,
) -> CyclicPoly {
    let chord = *g.chord(c).expect("chord of this diagram");
    let mut poly = CyclicPoly::zero(f[&c].abs());
    for (other, direction) in g.crossing_chords(&chord) {
        let f_other = &f[&other.id];
        match direction {
            CrossingDirection::LeftToRight => {
                poly.add_term(f_other.clone(), BigInt::from(other.sign.value()));
            }
            CrossingDirection::RightToLeft => {
                poly.add_term(-f_other, BigInt::from(-other.sign.value()));
            }
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_diagram;
    use crate::diagram::gauss_diagram;
    use crate::homology::is_admissible;

    fn d(text: &str) -> SurfaceDiagram {
        parse_diagram(text).unwrap()
    }

    fn cls(v: &[i64]) -> HomologyClass {
        HomologyClass::from_i64s(v)
    }

    const VIRTUAL_TREFOIL: &str = "genus 1\nwalk O1+ a1+ O2+ U1+ b1+ U2+";
    const KISHINO: &str = "genus 2\nwalk O1+ a1+ U3- U1+ b1+ O3- O2+ a2+ U4- U2+ b2+ O4-";

    #[test]
    fn zero_class_gives_trivial_index() {
        let dia = d(VIRTUAL_TREFOIL);
        for c in dia.crossing_ids() {
            assert_eq!(chord_index(&dia, &cls(&[0, 0]), c).unwrap(), 0.into());
        }
    }

    #[test]
    fn virtual_trefoil_indices() {
        let dia = d(VIRTUAL_TREFOIL);
        let alpha = diagram_class(&dia);
        assert_eq!(alpha, cls(&[1, 1]));
        assert_eq!(chord_index(&dia, &alpha, CrossingId(1)).unwrap(), 1.into());
        assert_eq!(chord_index(&dia, &alpha, CrossingId(2)).unwrap(), (-1).into());
    }

    #[test]
    fn kishino_chord_indices() {
        let dia = d(KISHINO);
        let red = cls(&[-1, 0, 1, 0]);
        assert!(is_admissible(&red, &dia).unwrap());
        let values: Vec<BigInt> = (1..=4)
            .map(|i| chord_index(&dia, &red, CrossingId(i)).unwrap())
            .collect();
        assert_eq!(values, vec![0.into(), 0.into(), (-1).into(), 1.into()]);
    }

    #[test]
    fn three_handle_example_indices() {
        let dia = d("genus 3\nwalk O2+ a1+ O1+ a3+ O3+ U1+ b1+ U2+ b3+ U3+ a2+");
        let alpha = diagram_class(&dia);
        assert_eq!(chord_index(&dia, &alpha, CrossingId(1)).unwrap(), 1.into());
        assert_eq!(chord_index(&dia, &alpha, CrossingId(2)).unwrap(), 1.into());
        assert_eq!(chord_index(&dia, &alpha, CrossingId(3)).unwrap(), (-2).into());
    }

    #[test]
    fn non_admissible_class_is_rejected() {
        let dia = d("genus 1\nwalk O1+ a1+ U1+");
        let err = chord_index(&dia, &cls(&[0, 1]), CrossingId(1)).unwrap_err();
        assert_eq!(err, IndexError::NotAdmissible((-1).into()));
    }

    #[test]
    fn coloring_of_zero_class_is_constant() {
        let dia = d(VIRTUAL_TREFOIL);
        let col = coloring(&dia, &cls(&[0, 0])).unwrap();
        assert!(col.colors().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn coloring_agrees_with_homological_route() {
        let dia = d(KISHINO);
        let red = cls(&[-1, 0, 1, 0]);
        for c in dia.crossing_ids() {
            assert_eq!(
                chord_index(&dia, &red, c).unwrap(),
                chord_index_via_coloring(&dia, &red, c).unwrap(),
            );
        }
    }

    #[test]
    fn coloring_fails_to_close_for_inadmissible_class() {
        let dia = d("genus 1\nwalk O1+ a1+ U1+");
        assert!(matches!(
            coloring(&dia, &cls(&[0, 1])),
            Err(IndexError::NotAdmissible(_))
        ));
    }

    #[test]
    fn isolated_chord_has_zero_gauss_index() {
        let g = GaussDiagram::from_code("O1+ U1+").unwrap();
        assert_eq!(gauss_index(&g, CrossingId(1)).unwrap(), 0);
    }

    #[test]
    fn virtual_trefoil_gauss_indices() {
        let g = GaussDiagram::from_code("O1+ O2+ U1+ U2+").unwrap();
        assert_eq!(gauss_index(&g, CrossingId(1)).unwrap(), 1);
        assert_eq!(gauss_index(&g, CrossingId(2)).unwrap(), -1);
    }

    #[test]
    fn unknown_chord_is_an_error() {
        let g = GaussDiagram::from_code("O1+ U1+").unwrap();
        assert_eq!(
            gauss_index(&g, CrossingId(9)),
            Err(IndexError::UnknownChord(CrossingId(9)))
        );
    }

    /// Brute force over all Gauss diagrams with up to three chords. The
    /// writhe-weighted index sum vanishes identically because the two
    /// chords of an interleaving pair cross each other in opposite
    /// directions. (The unweighted sum vanishes only when all chord signs
    /// agree; a two-chord diagram with mixed signs is a counterexample.)
    #[test]
    fn weighted_index_sum_vanishes_by_brute_force() {
        for n in 1..=3usize {
            for_each_gauss_diagram(n, &mut |g| {
                let mut weighted = 0i64;
                let mut plain = 0i64;
                let mut all_same = true;
                for c in g.chords() {
                    let ind = gauss_index(g, c.id).unwrap();
                    weighted += c.sign.value() * ind;
                    plain += ind;
                    all_same &= c.sign == g.chords()[0].sign;
                }
                assert_eq!(weighted, 0, "chords: {:?}", g.chords());
                if all_same {
                    assert_eq!(plain, 0, "chords: {:?}", g.chords());
                }
            });
        }
    }

    fn for_each_gauss_diagram(n: usize, f: &mut dyn FnMut(&GaussDiagram)) {
        use crate::diagram::Chord;

        fn place(
            next: usize,
            n: usize,
            occupied: &mut [bool],
            chords: &mut Vec<Chord>,
            f: &mut dyn FnMut(&GaussDiagram),
        ) {
            let slots = occupied.len();
            if next == n {
                for signs in 0..(1u32 << n) {
                    let signed: Vec<Chord> = chords
                        .iter()
                        .enumerate()
                        .map(|(i, c)| Chord {
                            sign: if signs & (1 << i) != 0 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            },
                            ..*c
                        })
                        .collect();
                    f(&GaussDiagram::new(signed, slots));
                }
                return;
            }
            let first = (0..slots).find(|&i| !occupied[i]).unwrap();
            for second in 0..slots {
                if second == first || occupied[second] {
                    continue;
                }
                occupied[first] = true;
                occupied[second] = true;
                chords.push(Chord {
                    id: CrossingId(next as u32 + 1),
                    sign: Sign::Plus,
                    over_slot: first,
                    under_slot: second,
                });
                place(next + 1, n, occupied, chords, f);
                chords.pop();
                occupied[first] = false;
                occupied[second] = false;
            }
        }

        let mut occupied = vec![false; 2 * n];
        let mut chords = Vec::new();
        place(0, n, &mut occupied, &mut chords, f);
    }

    #[test]
    fn parity_of_zero_class_is_even() {
        let dia = d(VIRTUAL_TREFOIL);
        for c in dia.crossing_ids() {
            assert_eq!(parity(&dia, &cls(&[0, 0]), c).unwrap(), 0);
        }
    }

    #[test]
    fn kishino_parities() {
        let dia = d(KISHINO);
        let red = cls(&[-1, 0, 1, 0]);
        let p: Vec<u8> = (1..=4)
            .map(|i| parity(&dia, &red, CrossingId(i)).unwrap())
            .collect();
        assert_eq!(p, vec![0, 0, 1, 1]);
    }

    #[test]
    fn parity_for_mod2_only_class() {
        // [D] = 2 e1: alpha = (0,1) pairs to -2, even but nonzero.
        let dia = d("genus 1\nwalk O1+ a1+ a1+ U1+");
        let alpha = cls(&[0, 1]);
        assert!(matches!(
            chord_index(&dia, &alpha, CrossingId(1)),
            Err(IndexError::NotAdmissible(_))
        ));
        assert_eq!(parity(&dia, &alpha, CrossingId(1)).unwrap(), 0);
        // an odd pairing is rejected: [D] = e1 pairs to -1 with (0,1)
        let kinked = d("genus 1\nwalk O1+ a1+ U1+");
        assert!(matches!(
            parity(&kinked, &cls(&[0, 1]), CrossingId(1)),
            Err(IndexError::NotMod2Admissible(_))
        ));
    }

    #[test]
    fn group_index_sums_to_diagram_class() {
        let dia = d("genus 1\nwalk O1+ a1+ U1+ b1+");
        let g = group_index(&dia, CrossingId(1)).unwrap();
        let mut total = HomologyClass::zero(2);
        for (class, coeff) in g.terms() {
            assert_eq!(*coeff, 1.into());
            total = total.add(class);
        }
        assert_eq!(total, diagram_class(&dia));
        let classes: Vec<&HomologyClass> = g.terms().map(|(c, _)| c).collect();
        assert_eq!(classes, vec![&cls(&[0, 1]), &cls(&[1, 0])]);
    }

    #[test]
    fn group_index_merges_coincident_classes() {
        // kink: both smoothing circles are null-homologous
        let dia = d("genus 0\nwalk O1+ U1+");
        let g = group_index(&dia, CrossingId(1)).unwrap();
        let terms: Vec<_> = g.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(*terms[0].1, 2.into());
    }

    #[test]
    fn fiedler_index_picks_by_sign() {
        let dia = d("genus 1\nwalk O1+ a1+ U1+ b1+");
        // positive crossing selects the left circle
        assert_eq!(fiedler_index(&dia, CrossingId(1)).unwrap(), cls(&[1, 0]));
        // mirroring selects the other circle of the original diagram
        let m = dia.mirror();
        assert_eq!(fiedler_index(&m, CrossingId(1)).unwrap(), cls(&[0, 1]));
    }

    #[test]
    fn regular_index_swaps_weights_with_sign() {
        let dia = d("genus 1\nwalk O1+ a1+ U1+ b1+");
        let r = regular_index(&dia, CrossingId(1)).unwrap();
        assert_eq!(r.x_class, cls(&[1, 0]));
        assert_eq!(r.y_class, cls(&[0, 1]));
        let m = dia.mirror();
        let rm = regular_index(&m, CrossingId(1)).unwrap();
        assert_eq!(rm.x_class, cls(&[0, 1]));
        assert_eq!(rm.y_class, cls(&[1, 0]));
    }

    #[test]
    fn index_function_of_isolated_chord_is_zero() {
        let dia = d("genus 0\nwalk O1+ U1+");
        let p = index_function(&dia, &cls(&[]), CrossingId(1)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn index_function_evaluates_to_gauss_index_at_one() {
        let dia = d(KISHINO);
        let g = gauss_diagram(&dia);
        for alpha in [diagram_class(&dia), cls(&[-1, 0, 1, 0])] {
            for c in dia.crossing_ids() {
                let p = index_function(&dia, &alpha, c).unwrap();
                assert_eq!(p.eval_at_one(), gauss_index(&g, c).unwrap().into());
            }
        }
    }

    #[test]
    fn index_function_trefoil_single_terms() {
        let dia = d(VIRTUAL_TREFOIL);
        let alpha = diagram_class(&dia);
        for c in dia.crossing_ids() {
            let p = index_function(&dia, &alpha, c).unwrap();
            let terms: Vec<_> = p.terms().collect();
            assert_eq!(terms.len(), 1);
            assert_eq!(terms[0].1.magnitude().to_string(), "1");
        }
    }

    #[test]
    fn indices_are_basepoint_independent() {
        let dia = d(KISHINO);
        let red = cls(&[-1, 0, 1, 0]);
        for k in 0..dia.events().len() {
            let rot = dia.rotated(k);
            for c in dia.crossing_ids() {
                assert_eq!(
                    chord_index(&dia, &red, c).unwrap(),
                    chord_index(&rot, &red, c).unwrap()
                );
                assert_eq!(
                    gauss_index(&gauss_diagram(&dia), c).unwrap(),
                    gauss_index(&gauss_diagram(&rot), c).unwrap()
                );
            }
        }
    }
}
