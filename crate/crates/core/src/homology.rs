//! First homology of the closed oriented genus-`g` surface with the skew
//! intersection pairing, walk classes, and the admissible subgroup of a
//! diagram.
//!
//! Classes are integer vectors in the fixed basis `e_1, ..., e_2g` with
//! `e_(2i-1) . e_(2i) = +1`. All arithmetic is exact (`BigInt`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::diagram::{Event, Sign, SurfaceDiagram};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("class lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("side index {basis} out of range for genus {genus}")]
    SideIndexOutOfRange { basis: usize, genus: u32 },
}

/// An element of H_1 of the genus-`g` surface: an integer vector of length `2g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HomologyClass {
    coords: Vec<BigInt>,
}

impl HomologyClass {
    pub fn new(coords: Vec<BigInt>) -> Self {
        HomologyClass { coords }
    }

    pub fn zero(rank: usize) -> Self {
        HomologyClass {
            coords: vec![BigInt::zero(); rank],
        }
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        HomologyClass {
            coords: coords.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    /// The basis vector `e_(index+1)` of the rank-`rank` lattice.
    pub fn basis_vector(rank: usize, index: usize) -> Self {
        let mut coords = vec![BigInt::zero(); rank];
        coords[index] = BigInt::from(1);
        HomologyClass { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank());
        HomologyClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        HomologyClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        HomologyClass {
            coords: self.coords.iter().map(|a| a * n).collect(),
        }
    }

    /// The algebraic intersection number, `sum_i (x_(2i-1) y_(2i) - x_(2i) y_(2i-1))`.
    pub fn intersection(&self, other: &Self) -> Result<BigInt, HomologyError> {
        if self.rank() != other.rank() {
            return Err(HomologyError::LengthMismatch(self.rank(), other.rank()));
        }
        let mut total = BigInt::zero();
        for i in (0..self.rank()).step_by(2) {
            total += &self.coords[i] * &other.coords[i + 1];
            total -= &self.coords[i + 1] * &other.coords[i];
        }
        Ok(total)
    }

    /// Pairing with the basis vector `e_(basis+1)` (0-based).
    pub fn pair_with_basis(&self, basis: usize) -> BigInt {
        if basis % 2 == 0 {
            // x . e_(2i-1) = -x_(2i)
            -self.coords[basis + 1].clone()
        } else {
            // x . e_(2i) = +x_(2i-1)
            self.coords[basis - 1].clone()
        }
    }
}

impl std::fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Net signed side-crossing counts of an event sequence.
pub fn class_of_events(events: &[Event], genus: u32) -> Result<HomologyClass, HomologyError> {
    let rank = 2 * genus as usize;
    let mut coords = vec![BigInt::zero(); rank];
    for ev in events {
        if let Event::Side { basis, dir } = *ev {
            if basis >= rank {
                return Err(HomologyError::SideIndexOutOfRange { basis, genus });
            }
            match dir {
                Sign::Plus => coords[basis] += 1,
                Sign::Minus => coords[basis] -= 1,
            }
        }
    }
    Ok(HomologyClass { coords })
}

/// The class `[D]` of the whole diagram walk.
pub fn diagram_class(d: &SurfaceDiagram) -> HomologyClass {
    class_of_events(d.events(), d.genus()).expect("validated diagram")
}

/// `true` iff `alpha . [D] = 0`.
pub fn is_admissible(alpha: &HomologyClass, d: &SurfaceDiagram) -> Result<bool, HomologyError> {
    Ok(alpha.intersection(&diagram_class(d))?.is_zero())
}

/// Integer kernel basis of the linear form `x -> sum_i m_i x_i`.
///
/// Runs the extended-gcd chain over the support of `m`, producing a genuine
/// Z-basis (the chain matrix is unimodular). Coordinates outside the support
/// contribute their plain basis vectors.
fn kernel_of_form(m: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let support: Vec<usize> = (0..n).filter(|&i| !m[i].is_zero()).collect();
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|i| !support.contains(i))
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::from(1);
            v
        })
        .collect();
    if support.is_empty() {
        return basis;
    }
    // u always satisfies m . u = g, the running gcd of the processed entries.
    let mut g = m[support[0]].clone();
    let mut u = vec![BigInt::zero(); n];
    u[support[0]] = BigInt::from(1);
    for &i in &support[1..] {
        let e = num_integer::gcd(g.clone(), m[i].clone());
        // v = (m_i / e) u - (g / e) e_i lies in the kernel.
        let mut v: Vec<BigInt> = u.iter().map(|x| x * (&m[i] / &e)).collect();
        v[i] -= &g / &e;
        basis.push(v);
        // Bezout: s g + t m_i = e.
        let ext = g.extended_gcd(&m[i]);
        let mut next_u: Vec<BigInt> = u.iter().map(|x| x * &ext.x).collect();
        next_u[i] += &ext.y;
        u = next_u;
        g = e;
    }
    basis
}

/// A Z-basis of the admissible subgroup `{alpha : alpha . [D] = 0}`.
///
/// The basis has `2g` elements when `[D] = 0` and `2g - 1` otherwise.
/// Vectors are sign-normalised (first nonzero coordinate positive) and
/// sorted lexicographically for deterministic output.
pub fn admissible_subgroup_basis(d: &SurfaceDiagram) -> Vec<HomologyClass> {
    let k = diagram_class(d);
    let rank = k.rank();
    // alpha . [D] = sum_i alpha_i m_i with m read off the symplectic form.
    let mut m = vec![BigInt::zero(); rank];
    for i in (0..rank).step_by(2) {
        m[i] = k.coords()[i + 1].clone();
        m[i + 1] = -k.coords()[i].clone();
    }
    let mut basis: Vec<HomologyClass> = kernel_of_form(&m)
        .into_iter()
        .map(|mut v| {
            if let Some(first) = v.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    v = v.iter().map(|c| -c).collect();
                }
            }
            HomologyClass::new(v)
        })
        .collect();
    basis.sort();
    basis
}

/// Canonical representative of `alpha` modulo the cyclic subgroup generated
/// by `k`: the coordinate at `k`'s first nonzero entry (after sign
/// normalisation) is reduced into `[0, |k_p|)`.
pub fn reduce_mod_cyclic(alpha: &HomologyClass, k: &HomologyClass) -> HomologyClass {
    assert_eq!(alpha.rank(), k.rank());
    let Some(p) = k.coords().iter().position(|c| !c.is_zero()) else {
        return alpha.clone();
    };
    let k = if k.coords()[p].is_negative() {
        k.neg()
    } else {
        k.clone()
    };
    let q = alpha.coords()[p].div_floor(&k.coords()[p]);
    alpha.sub(&k.scale(&q))
}
