//! Matrices over group rings and the class W(A, R) of matrices that become
//! invertible over R.

use std::fmt;

use crate::error::{Error, Result};
use crate::groupring::{GroupRing, GroupRingElem, RingMap};
use crate::ring::{self, Mat};
use crate::scalar::{fmt_scalar, CoeffRing, Scalar};

/// A matrix over k[G]; with row vectors, it is the map `x ↦ x·M` from
/// `A^rows` to `A^cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixA {
    pub ring: GroupRing,
    pub mat: Mat<GroupRingElem>,
}

impl MatrixA {
    pub fn new(ring: GroupRing, mat: Mat<GroupRingElem>) -> Result<Self> {
        if mat.data.iter().any(|e| e.ring() != &ring) {
            return Err(Error::RingMismatch(format!("matrix entries must lie in {}", ring.header())));
        }
        Ok(MatrixA { ring, mat })
    }

    pub fn from_rows(ring: &GroupRing, rows: Vec<Vec<GroupRingElem>>, cols: usize) -> Result<Self> {
        Self::new(ring.clone(), Mat::from_rows(rows, cols)?)
    }

    pub fn zero(ring: &GroupRing, rows: usize, cols: usize) -> Self {
        MatrixA { ring: ring.clone(), mat: ring::zeros(ring, rows, cols) }
    }

    pub fn identity(ring: &GroupRing, n: usize) -> Self {
        MatrixA { ring: ring.clone(), mat: ring::identity(ring, n) }
    }

    /// `c·I_n`.
    pub fn scalar_diag(ring: &GroupRing, c: &GroupRingElem, n: usize) -> Self {
        MatrixA { ring: ring.clone(), mat: ring::mat_scale(ring, c, &ring::identity(ring, n)) }
    }

    pub fn rows(&self) -> usize {
        self.mat.rows
    }

    pub fn cols(&self) -> usize {
        self.mat.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElem {
        self.mat.get(i, j)
    }

    pub fn is_square(&self) -> bool {
        self.mat.is_square()
    }

    fn check(&self, other: &MatrixA) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check(other)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: ring::mat_mul(&self.ring, &self.mat, &other.mat)? })
    }

    pub fn add(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check(other)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: ring::mat_add(&self.ring, &self.mat, &other.mat)? })
    }

    pub fn neg(&self) -> MatrixA {
        MatrixA { ring: self.ring.clone(), mat: ring::mat_neg(&self.ring, &self.mat) }
    }

    pub fn scale(&self, c: &GroupRingElem) -> MatrixA {
        MatrixA { ring: self.ring.clone(), mat: ring::mat_scale(&self.ring, c, &self.mat) }
    }

    pub fn transpose(&self) -> MatrixA {
        MatrixA { ring: self.ring.clone(), mat: self.mat.transpose() }
    }

    pub fn is_zero(&self) -> bool {
        ring::mat_is_zero(&self.ring, &self.mat)
    }

    pub fn vstack(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check(other)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: self.mat.vstack(&other.mat)? })
    }

    pub fn hstack(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check(other)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: self.mat.hstack(&other.mat)? })
    }

    pub fn block_diag(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check(other)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: ring::block_diag(&self.ring, &self.mat, &other.mat) })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixA {
        MatrixA { ring: self.ring.clone(), mat: self.mat.submatrix(rows, cols) }
    }

    /// Determinant over A (division-free); A must be commutative.
    pub fn det(&self) -> Result<GroupRingElem> {
        require_commutative(&self.ring)?;
        ring::det(&self.ring, &self.mat)
    }

    pub fn adjugate(&self) -> Result<MatrixA> {
        require_commutative(&self.ring)?;
        Ok(MatrixA { ring: self.ring.clone(), mat: ring::adjugate(&self.ring, &self.mat)? })
    }

    /// Same entries over a larger coefficient ring.
    pub fn change_coeff(&self, coeff: CoeffRing) -> Result<MatrixA> {
        let ring = self.ring.with_coeff(coeff);
        Ok(MatrixA { ring, mat: self.mat.try_map(|e| e.change_coeff(coeff))? })
    }

    /// One string per row, entries separated by `, `.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows())
            .map(|i| self.mat.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
            .collect()
    }
}

impl fmt::Display for MatrixA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.row_strings().join("; "))
    }
}

pub fn require_commutative(ring: &GroupRing) -> Result<()> {
    if ring.is_commutative() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("{} is not commutative", ring.header())))
    }
}

/// A matrix over R ∈ {ℤ, ℚ, 𝔽_p}.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixR {
    pub coeff: CoeffRing,
    pub mat: Mat<Scalar>,
}

impl MatrixR {
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.mat.rows)
            .map(|i| self.mat.row(i).iter().map(fmt_scalar).collect::<Vec<_>>().join(", "))
            .collect()
    }

    pub fn det(&self) -> Result<Scalar> {
        ring::scalar_det(self.coeff, &self.mat)
    }
}

/// Entrywise image under the ring map.
pub fn mat_image(m: &MatrixA, map: &RingMap) -> Result<MatrixR> {
    if &m.ring != map.source() {
        return Err(Error::RingMismatch(format!(
            "matrix over {} but map from {}",
            m.ring.header(),
            map.source().header()
        )));
    }
    Ok(MatrixR { coeff: map.target(), mat: m.mat.try_map(|e| map.apply(e))? })
}

#[derive(Debug, Clone, PartialEq)]
pub enum WReason {
    NonSquare { rows: usize, cols: usize },
    DetNotUnit { det_image: Scalar },
}

impl fmt::Display for WReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WReason::NonSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            WReason::DetNotUnit { det_image } => {
                write!(f, "determinant image {} is not a unit", fmt_scalar(det_image))
            }
        }
    }
}

/// Outcome of a W-membership test, with its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct WDecision {
    pub verdict: bool,
    /// On success: the determinant's image and its inverse in R.
    pub det_image: Option<Scalar>,
    pub det_inverse: Option<Scalar>,
    pub reason: Option<WReason>,
}

pub fn w_membership(alpha: &MatrixA, map: &RingMap) -> Result<WDecision> {
    require_commutative(&alpha.ring)?;
    let image = mat_image(alpha, map)?;
    if !alpha.is_square() {
        return Ok(WDecision {
            verdict: false,
            det_image: None,
            det_inverse: None,
            reason: Some(WReason::NonSquare { rows: alpha.rows(), cols: alpha.cols() }),
        });
    }
    let d = image.det()?;
    Ok(match map.target().inv(&d) {
        Some(inv) => WDecision { verdict: true, det_image: Some(d), det_inverse: Some(inv), reason: None },
        None => WDecision {
            verdict: false,
            det_image: Some(d.clone()),
            det_inverse: None,
            reason: Some(WReason::DetNotUnit { det_image: d }),
        },
    })
}

/// `[[top_left, top_right], [0, bottom_right]]`.
pub fn block_upper(top_left: &MatrixA, top_right: &MatrixA, bottom_right: &MatrixA) -> Result<MatrixA> {
    if top_right.rows() != top_left.rows() || top_right.cols() != bottom_right.cols() {
        return Err(Error::Dimension(format!(
            "off-diagonal block is {}x{}, expected {}x{}",
            top_right.rows(),
            top_right.cols(),
            top_left.rows(),
            bottom_right.cols()
        )));
    }
    let zero = MatrixA::zero(&top_left.ring, bottom_right.rows(), top_left.cols());
    top_left.hstack(top_right)?.vstack(&zero.hstack(bottom_right)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_elem;
    use crate::scalar::int;

    fn zt() -> GroupRing {
        GroupRing::parse_header("Z[t]").unwrap()
    }

    fn m(rows: &[&[&str]]) -> MatrixA {
        let r = zt();
        let cols = rows.first().map_or(0, |x| x.len());
        MatrixA::from_rows(&r, rows.iter().map(|row| row.iter().map(|s| parse_elem(&r, s, 0).unwrap()).collect()).collect(), cols)
            .unwrap()
    }

    fn aug() -> RingMap {
        RingMap::augmentation(zt(), CoeffRing::Z).unwrap()
    }

    #[test]
    fn images() {
        let img = mat_image(&m(&[&["1-t", "2"], &["0", "3"]]), &aug()).unwrap();
        assert_eq!(img.row_strings(), vec!["0, 2", "0, 3"]);
    }

    #[test]
    fn membership_examples() {
        assert!(w_membership(&m(&[&["2t-1"]]), &aug()).unwrap().verdict);
        assert!(!w_membership(&m(&[&["1-t"]]), &aug()).unwrap().verdict);
        assert!(!w_membership(&m(&[&["t", "1"], &["1", "t"]]), &aug()).unwrap().verdict);
        let d = w_membership(&m(&[&["t", "1"], &["0", "2t-1"]]), &aug()).unwrap();
        assert!(d.verdict);
        assert_eq!(d.det_inverse, Some(int(1)));
        let d = w_membership(&m(&[&["t", "1"]]), &aug()).unwrap();
        assert_eq!(d.reason, Some(WReason::NonSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn noncommutative_refused() {
        let r = GroupRing::parse_header("Z[D3:r,s]").unwrap();
        let a = MatrixA::identity(&r, 1);
        let map = RingMap::augmentation(r, CoeffRing::Z).unwrap();
        assert!(matches!(w_membership(&a, &map), Err(Error::Unsupported(_))));
    }

    #[test]
    fn block_examples() {
        let r = zt();
        let b = block_upper(&MatrixA::identity(&r, 2), &MatrixA::zero(&r, 2, 3), &MatrixA::identity(&r, 3)).unwrap();
        assert_eq!(b, MatrixA::identity(&r, 5));
        let b = block_upper(&m(&[&["2t-1"]]), &m(&[&["5"]]), &m(&[&["t"]])).unwrap();
        assert!(w_membership(&b, &aug()).unwrap().verdict);
        assert!(block_upper(&m(&[&["1"]]), &m(&[&["1", "2"]]), &m(&[&["t"]])).is_err());
    }
}
