//! Projective spaces PG(d, q) over small fields: points, hyperplanes, the
//! incidence matrix, and the permutation actions of projectivities on both.
//!
//! A matrix and its inverse-transpose fix equally many subspaces in every
//! dimension, so the point and hyperplane actions of any subgroup are
//! linearly equivalent, with the incidence matrix as an explicit
//! intertwiner. Transplantable seeds come from involution triples whose
//! point action is transitive but not isomorphic to the hyperplane action.

use thiserror::Error;

use super::gf::{self, Gf};
use crate::matrix::IntMatrix;
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error(transparent)]
    Field(#[from] super::gf::FieldError),
    #[error("singular matrix")]
    Singular,
    #[error("matrix has dimension {0}, space needs {1}")]
    Dimension(usize, usize),
}

#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    pub dim: usize,
    pub q: usize,
    pub gf: Gf,
    /// Normalized homogeneous coordinates, lexicographically sorted.
    pub points: Vec<Vec<u8>>,
    /// Normalized dual vectors, same ordering scheme.
    pub hyperplanes: Vec<Vec<u8>>,
    /// `incidence[(i, j)] = 1` iff point `i` lies on hyperplane `j`.
    pub incidence: IntMatrix,
}

impl ProjectiveSpace {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

fn normalized_vectors(gf: &Gf, len: usize) -> Vec<Vec<u8>> {
    let q = gf.q;
    let total = q.pow(len as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut v = vec![0u8; len];
        let mut rem = code;
        for x in v.iter_mut().rev() {
            *x = (rem % q) as u8;
            rem /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out.sort();
    out
}

/// Build PG(d, q). Supported: any (d, prime) within table limits plus q = 4;
/// the catalog uses (2,2), (2,3), (3,2), (2,4).
pub fn build_projective_space(d: usize, q: usize) -> Result<ProjectiveSpace, ProjectiveError> {
    let gf = Gf::new(q)?;
    let len = d + 1;
    let points = normalized_vectors(&gf, len);
    let hyperplanes = points.clone();
    let n = points.len();
    let mut incidence = IntMatrix::zero(n, n);
    for (i, p) in points.iter().enumerate() {
        for (j, h) in hyperplanes.iter().enumerate() {
            if gf.dot(p, h) == 0 {
                incidence[(i, j)] = 1;
            }
        }
    }
    let expected = (q.pow(len as u32) - 1) / (q - 1);
    debug_assert_eq!(n, expected);
    Ok(ProjectiveSpace { dim: d, q, gf, points, hyperplanes, incidence })
}

/// A projectivity acting on points and hyperplanes simultaneously.
#[derive(Debug, Clone)]
pub struct GroupElementAction {
    pub matrix: Vec<u8>,
    pub point_perm: Permutation,
    pub hyperplane_perm: Permutation,
}

/// Point permutation from `v -> m v`, hyperplane permutation from the
/// inverse-transpose action `h -> h m^{-1}`; incidence preservation is
/// checked.
pub fn collineation_actions(
    space: &ProjectiveSpace,
    m: &[u8],
) -> Result<GroupElementAction, ProjectiveError> {
    let dim = space.dim + 1;
    if m.len() != dim * dim {
        return Err(ProjectiveError::Dimension(m.len(), dim * dim));
    }
    let gf = &space.gf;
    let m_inv = gf::mat_inv(gf, m, dim).ok_or(ProjectiveError::Singular)?;
    let index_of = |list: &[Vec<u8>], v: &[u8]| -> usize {
        list.binary_search_by(|x| x.as_slice().cmp(v)).expect("normalized vector is listed")
    };
    let point_imgs: Vec<usize> = space
        .points
        .iter()
        .map(|p| {
            let image = gf::normalize_vec(gf, &gf::mat_vec(gf, m, p, dim)).expect("nonzero");
            index_of(&space.points, &image)
        })
        .collect();
    let hyp_imgs: Vec<usize> = space
        .hyperplanes
        .iter()
        .map(|h| {
            let image = gf::normalize_vec(gf, &gf::vec_mat(gf, h, &m_inv, dim)).expect("nonzero");
            index_of(&space.hyperplanes, &image)
        })
        .collect();
    let point_perm = Permutation::from_images(point_imgs).expect("projectivity is a bijection");
    let hyperplane_perm = Permutation::from_images(hyp_imgs).expect("dual action is a bijection");
    let action = GroupElementAction { matrix: m.to_vec(), point_perm, hyperplane_perm };
    debug_assert!(preserves_incidence(space, &action));
    Ok(action)
}

pub fn preserves_incidence(space: &ProjectiveSpace, action: &GroupElementAction) -> bool {
    let n = space.size();
    (0..n).all(|i| {
        (0..n).all(|j| {
            space.incidence[(i, j)]
                == space.incidence[(action.point_perm.apply(i), action.hyperplane_perm.apply(j))]
        })
    })
}

/// All involutions of the projective group, as paired point/hyperplane
/// permutations, sorted by point action. Matrices are scanned in
/// lexicographic entry order and normalized, so the result is
/// deterministic.
pub fn projective_involutions(space: &ProjectiveSpace) -> Vec<GroupElementAction> {
    let dim = space.dim + 1;
    let q = space.q;
    let gf = &space.gf;
    let cells = dim * dim;
    let total = q.pow(cells as u32);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut m = vec![0u8; cells];
        let mut rem = code;
        for x in m.iter_mut().rev() {
            *x = (rem % q) as u8;
            rem /= q;
        }
        // Canonical projective representative only.
        if m.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        if !gf::is_invertible(gf, &m, dim) {
            continue;
        }
        let sq = gf::normalize_mat(gf, &gf::mat_mul(gf, &m, &m, dim));
        if !is_identity(&sq, dim) || is_identity(&m, dim) {
            continue;
        }
        if seen.insert(m.clone()) {
            out.push(collineation_actions(space, &m).expect("invertible"));
        }
    }
    out.sort_by(|x, y| x.point_perm.images().cmp(y.point_perm.images()));
    out
}

fn is_identity(m: &[u8], dim: usize) -> bool {
    m.iter()
        .enumerate()
        .all(|(idx, &v)| v == u8::from(idx / dim == idx % dim))
}

/// Representatives of the involution conjugacy classes, as indices into the
/// sorted involution list. Classes are told apart by the rank of `g - 1`
/// acting on points, which for these groups reduces to the fixed-point
/// count of the point action.
pub fn involution_class_representatives(involutions: &[GroupElementAction]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    let mut seen_fixed = std::collections::HashSet::new();
    for (i, inv) in involutions.iter().enumerate() {
        if seen_fixed.insert(inv.point_perm.count_fixed()) {
            reps.push(i);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};

    #[test]
    fn fano_plane_counts() {
        let s = build_projective_space(2, 2).unwrap();
        assert_eq!(s.points.len(), 7);
        assert_eq!(s.hyperplanes.len(), 7);
        for j in 0..7 {
            let on_line = (0..7).filter(|&i| s.incidence[(i, j)] == 1).count();
            assert_eq!(on_line, 3);
        }
    }

    #[test]
    fn pg24_and_pg32_counts() {
        let s = build_projective_space(2, 4).unwrap();
        assert_eq!(s.points.len(), 21);
        for j in 0..21 {
            assert_eq!((0..21).filter(|&i| s.incidence[(i, j)] == 1).count(), 5);
        }
        let s = build_projective_space(3, 2).unwrap();
        assert_eq!(s.points.len(), 15);
        for j in 0..15 {
            assert_eq!((0..15).filter(|&i| s.incidence[(i, j)] == 1).count(), 7);
        }
    }

    #[test]
    fn pg23_counts() {
        let s = build_projective_space(2, 3).unwrap();
        assert_eq!(s.points.len(), 13);
        for j in 0..13 {
            assert_eq!((0..13).filter(|&i| s.incidence[(i, j)] == 1).count(), 4);
        }
    }

    #[test]
    fn fano_incidence_determinant_is_24() {
        let s = build_projective_space(2, 2).unwrap();
        assert_eq!(s.incidence.determinant().abs(), BigInt::from(24));
    }

    #[test]
    fn incidence_matrices_invertible() {
        for (d, q) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            let s = build_projective_space(d, q).unwrap();
            assert!(!s.incidence.determinant().is_zero(), "PG({d},{q})");
        }
    }

    #[test]
    fn identity_matrix_acts_trivially() {
        let s = build_projective_space(2, 2).unwrap();
        let m = vec![1, 0, 0, 0, 1, 0, 0, 0, 1];
        let act = collineation_actions(&s, &m).unwrap();
        assert!(act.point_perm.is_identity());
        assert!(act.hyperplane_perm.is_identity());
    }

    #[test]
    fn incidence_intertwines_every_involution() {
        // incidence . P_point = P_hyperplane . incidence, as exact matrices:
        // entry (i, j) of both sides is incidence[pp^{-1}(i), j] vs
        // incidence[i, hp(j)] -- equality is incidence preservation.
        for (d, q) in [(2, 2), (2, 3)] {
            let s = build_projective_space(d, q).unwrap();
            for inv in projective_involutions(&s) {
                let pp = IntMatrix::permutation(&inv.point_perm);
                let hp = IntMatrix::permutation(&inv.hyperplane_perm);
                assert_eq!(s.incidence.mul(&hp), pp.mul(&s.incidence));
            }
        }
    }

    #[test]
    fn involutions_square_to_identity() {
        let s = build_projective_space(2, 2).unwrap();
        let invs = projective_involutions(&s);
        assert_eq!(invs.len(), 21);
        for inv in &invs {
            assert!(inv.point_perm.is_involution());
            assert!(!inv.point_perm.is_identity());
            assert!(inv.hyperplane_perm.is_involution());
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let s = build_projective_space(2, 2).unwrap();
        let m = vec![1, 0, 0, 1, 0, 0, 0, 0, 1];
        assert_eq!(collineation_actions(&s, &m).unwrap_err(), ProjectiveError::Singular);
    }
}
