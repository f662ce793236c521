//! Linear equivalence vs permutation isomorphism of involution triples:
//! exact intertwiner computation, invertibility search, and certificates.
//!
//! A matrix `T` intertwines triples `l` and `r` when
//! `T * P_x(l) = P_x(r) * T` for each generator `x`, with `P` the
//! permutation matrix acting on basis vectors. Entrywise this says `T` is
//! constant on the orbits of `(i, j) -> (x_r(i), x_l(j))`, so the solution
//! space has the orbit indicator matrices as a basis: rows of `T` are
//! indexed by points of `r`, columns by points of `l`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{IntMatrix, RatMatrix};
use crate::perm::{evaluate_word, reduced_words, Gen, GeneratorWord, InvolutionTriple, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransplantError {
    #[error("point counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("triple is not transitive; the glued object would be disconnected")]
    NotTransitive,
    #[error("certificate invalid: {0}")]
    BadCertificate(String),
}

/// Fixed-point counts of all reduced words of length `0..=max_len`, in the
/// order produced by [`reduced_words`]. A cheap necessary condition for
/// linear equivalence: equivalent triples have equal fingerprints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub max_len: usize,
    pub counts: Vec<usize>,
}

pub fn fingerprint(t: &InvolutionTriple, max_len: usize) -> Fingerprint {
    let counts = reduced_words(max_len)
        .iter()
        .map(|w| evaluate_word(t, w).count_fixed())
        .collect();
    Fingerprint { max_len, counts }
}

/// First reduced word (in enumeration order) whose fixed-point counts
/// differ, searching lengths up to `max_len`.
pub fn distinguishing_word(
    l: &InvolutionTriple,
    r: &InvolutionTriple,
    max_len: usize,
) -> Option<GeneratorWord> {
    reduced_words(max_len)
        .into_iter()
        .find(|w| evaluate_word(l, w).count_fixed() != evaluate_word(r, w).count_fixed())
}

/// Orbits of the diagonal action `(i, j) -> (x_r(i), x_l(j))` on the grid;
/// cells hold `i * n + j`. Orbits are sorted by least cell.
fn grid_orbits(l: &InvolutionTriple, r: &InvolutionTriple) -> Vec<Vec<usize>> {
    let n = l.n();
    let mut seen = vec![false; n * n];
    let mut orbits = Vec::new();
    for start in 0..n * n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let cell = orbit[head];
            head += 1;
            let (i, j) = (cell / n, cell % n);
            for g in Gen::ALL {
                let cell2 = r.gen(g).apply(i) * n + l.gen(g).apply(j);
                if !seen[cell2] {
                    seen[cell2] = true;
                    orbit.push(cell2);
                }
            }
        }
        orbits.push(orbit);
    }
    orbits
}

pub fn grid_orbit_count(l: &InvolutionTriple, r: &InvolutionTriple) -> usize {
    grid_orbits(l, r).len()
}

/// Basis of the intertwiner space `{ T : T P_x(l) = P_x(r) T }` as 0/1
/// orbit indicator matrices with pairwise disjoint supports.
pub fn intertwiner_basis(
    l: &InvolutionTriple,
    r: &InvolutionTriple,
) -> Result<Vec<IntMatrix>, TransplantError> {
    if l.n() != r.n() {
        return Err(TransplantError::SizeMismatch(l.n(), r.n()));
    }
    let n = l.n();
    Ok(grid_orbits(l, r)
        .into_iter()
        .map(|orbit| {
            let mut m = IntMatrix::zero(n, n);
            for cell in orbit {
                m[(cell / n, cell % n)] = 1;
            }
            m
        })
        .collect())
}

/// Exact test for the existence of an invertible intertwiner. The triples
/// are linearly equivalent iff the multiplicity vectors of their
/// permutation characters agree, which happens iff
/// `dim Hom(l, r) = dim Hom(l, l) = dim Hom(r, r)`.
pub fn linearly_equivalent(l: &InvolutionTriple, r: &InvolutionTriple) -> bool {
    l.n() == r.n() && {
        let lr = grid_orbit_count(l, r);
        lr == grid_orbit_count(l, l) && lr == grid_orbit_count(r, r)
    }
}

fn combo(basis: &[IntMatrix], coeffs: &[i64]) -> IntMatrix {
    let mut m = IntMatrix::zero(basis[0].rows, basis[0].cols);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            m.scaled_add(c, b);
        }
    }
    m
}

fn invertible(m: &IntMatrix) -> bool {
    !m.determinant().is_zero()
}

/// Find an invertible element of the span of `basis`, or report that none
/// exists. Strategy: a bounded deterministic scan of small integer
/// combinations, then seeded random integer combinations, then a
/// determinant-polynomial test along random lines in coefficient space
/// (degree <= n, so n+1 sample points per line decide a line exactly).
pub fn find_invertible_intertwiner(basis: &[IntMatrix], rng_seed: u64) -> Option<IntMatrix> {
    if basis.is_empty() {
        return None;
    }
    let d = basis.len();
    // Deterministic scan: coefficient vectors over the digit order
    // 0, 1, -1, 2, -2, 3, -3 in lexicographic order, capped.
    const DIGITS: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];
    let cap: usize = 4096;
    let total: usize = 7usize.checked_pow(d.min(12) as u32).unwrap_or(usize::MAX).min(cap);
    let mut coeffs = vec![0i64; d];
    for idx in 1..total {
        let mut rem = idx;
        for c in coeffs.iter_mut().rev() {
            *c = DIGITS[rem % 7];
            rem /= 7;
            if rem == 0 {
                break;
            }
        }
        let m = combo(basis, &coeffs);
        if invertible(&m) {
            return Some(m);
        }
        coeffs.iter_mut().for_each(|c| *c = 0);
    }
    // Seeded random combinations.
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..64 {
        let coeffs: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=(2 * d as i64 + 3))).collect();
        let m = combo(basis, &coeffs);
        if invertible(&m) {
            return Some(m);
        }
    }
    // Line fallback: det along u + s v is a polynomial of degree <= n in s;
    // if it vanishes at n+1 distinct points it vanishes on the line.
    let n = basis[0].rows;
    for _ in 0..8 {
        let u: Vec<i64> = (0..d).map(|_| rng.gen_range(-7..=7)).collect();
        let v: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=7)).collect();
        for s in 0..=(n as i64) {
            let coeffs: Vec<i64> = u.iter().zip(&v).map(|(&a, &b)| a + s * b).collect();
            let m = combo(basis, &coeffs);
            if invertible(&m) {
                return Some(m);
            }
        }
    }
    None
}

/// Optional search for an invertible intertwiner with 0/1 entries. Since
/// the basis indicators have disjoint supports, these are exactly the 0/1
/// coefficient combinations; the enumeration is bounded by `budget`.
pub fn find_zero_one_intertwiner(basis: &[IntMatrix], budget: usize) -> Option<IntMatrix> {
    let d = basis.len();
    if d == 0 || d > 63 {
        return None;
    }
    let total = 1u64.checked_shl(d as u32).map_or(u64::MAX, |t| t);
    for mask in (1..total).take(budget) {
        let coeffs: Vec<i64> = (0..d).map(|i| ((mask >> i) & 1) as i64).collect();
        let m = combo(basis, &coeffs);
        if invertible(&m) {
            return Some(m);
        }
    }
    None
}

/// Complete backtracking search for `sigma` with
/// `l.relabel(&sigma) == r`, i.e. `sigma(x_l(i)) = x_r(sigma(i))` for all
/// three generators. Images are propagated through the generators from each
/// assignment, so transitive triples are decided in `O(n^2)`.
pub fn find_permutation_isomorphism(
    l: &InvolutionTriple,
    r: &InvolutionTriple,
) -> Result<Option<Permutation>, TransplantError> {
    if l.n() != r.n() {
        return Err(TransplantError::SizeMismatch(l.n(), r.n()));
    }
    let n = l.n();
    // Quick degree invariants.
    for g in Gen::ALL {
        if l.gen(g).count_fixed() != r.gen(g).count_fixed() {
            return Ok(None);
        }
    }
    let mut sigma: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    Ok(extend_isomorphism(l, r, &mut sigma, &mut used)
        .map(|img| Permutation::from_images(img).expect("search yields a bijection")))
}

fn extend_isomorphism(
    l: &InvolutionTriple,
    r: &InvolutionTriple,
    sigma: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    let n = l.n();
    let Some(i0) = (0..n).find(|&i| sigma[i].is_none()) else {
        return Some(sigma.iter().map(|s| s.unwrap()).collect());
    };
    for j0 in 0..n {
        if used[j0] {
            continue;
        }
        // Propagate sigma(i0) = j0 through the generators.
        let mut trail: Vec<usize> = Vec::new();
        let mut ok = true;
        let mut queue = vec![(i0, j0)];
        while let Some((i, j)) = queue.pop() {
            match sigma[i] {
                Some(run) => {
                    if run != j {
                        ok = false;
                        break;
                    }
                    continue;
                }
                None => {
                    if used[j] {
                        ok = false;
                        break;
                    }
                    sigma[i] = Some(j);
                    used[j] = true;
                    trail.push(i);
                    for g in Gen::ALL {
                        queue.push((l.gen(g).apply(i), r.gen(g).apply(j)));
                    }
                }
            }
        }
        if ok {
            if let Some(done) = extend_isomorphism(l, r, sigma, used) {
                return Some(done);
            }
        }
        for &i in trail.iter().rev() {
            let j = sigma[i].take().unwrap();
            used[j] = false;
        }
    }
    None
}

/// A verified transplantable pair: an exact invertible intertwiner plus the
/// non-isomorphism certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransplantablePair {
    pub left: InvolutionTriple,
    pub right: InvolutionTriple,
    #[serde(
        serialize_with = "serialize_intertwiner",
        deserialize_with = "deserialize_intertwiner"
    )]
    pub intertwiner: RatMatrix,
    pub nonisomorphic: bool,
}

fn serialize_intertwiner<S: serde::Serializer>(m: &RatMatrix, s: S) -> Result<S::Ok, S::Error> {
    m.to_strings().serialize(s)
}

fn deserialize_intertwiner<'de, D: serde::Deserializer<'de>>(d: D) -> Result<RatMatrix, D::Error> {
    let rows = Vec::<Vec<String>>::deserialize(d)?;
    RatMatrix::from_strings(&rows).map_err(serde::de::Error::custom)
}

impl TransplantablePair {
    /// Re-verify every certificate claim with exact arithmetic: the three
    /// intertwining identities, invertibility, and (when claimed) the
    /// absence of a permutation isomorphism.
    pub fn verify(&self) -> Result<(), TransplantError> {
        let n = self.left.n();
        if self.right.n() != n {
            return Err(TransplantError::SizeMismatch(n, self.right.n()));
        }
        if self.intertwiner.rows != n || self.intertwiner.cols != n {
            return Err(TransplantError::BadCertificate("intertwiner shape".into()));
        }
        for g in Gen::ALL {
            let pl = IntMatrix::permutation(self.left.gen(g)).to_rational();
            let pr = IntMatrix::permutation(self.right.gen(g)).to_rational();
            let lhs = self.intertwiner.mul(&pl);
            let rhs = pr.mul(&self.intertwiner);
            if lhs != rhs {
                return Err(TransplantError::BadCertificate(format!(
                    "intertwining identity fails for generator {}",
                    g.letter()
                )));
            }
        }
        if self.intertwiner.determinant().is_zero() {
            return Err(TransplantError::BadCertificate("intertwiner is singular".into()));
        }
        if self.nonisomorphic
            && find_permutation_isomorphism(&self.left, &self.right)?.is_some()
        {
            return Err(TransplantError::BadCertificate(
                "pair claimed nonisomorphic but an isomorphism exists".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of [`check_transplantable`].
#[derive(Debug, Clone)]
pub enum Verdict {
    Transplantable(Box<TransplantablePair>),
    Isomorphic(Permutation),
    /// Not linearly equivalent; carries the first distinguishing word when
    /// one is found within the extended fingerprint search.
    Inequivalent(Option<GeneratorWord>),
}

const FILTER_MAX_LEN: usize = 6;
const WITNESS_MAX_LEN: usize = 12;

/// Decide the relationship of two transitive triples: fingerprint filter,
/// exact intertwiner-space computation, invertibility search, then the
/// complete isomorphism search. Isomorphic takes precedence over
/// transplantable.
pub fn check_transplantable(
    l: &InvolutionTriple,
    r: &InvolutionTriple,
    rng_seed: u64,
) -> Result<Verdict, TransplantError> {
    if l.n() != r.n() {
        return Err(TransplantError::SizeMismatch(l.n(), r.n()));
    }
    if !l.is_transitive() || !r.is_transitive() {
        return Err(TransplantError::NotTransitive);
    }
    if fingerprint(l, FILTER_MAX_LEN) != fingerprint(r, FILTER_MAX_LEN) {
        return Ok(Verdict::Inequivalent(distinguishing_word(l, r, FILTER_MAX_LEN)));
    }
    if !linearly_equivalent(l, r) {
        // Character multiplicities differ even though short words agree.
        return Ok(Verdict::Inequivalent(distinguishing_word(l, r, WITNESS_MAX_LEN)));
    }
    let basis = intertwiner_basis(l, r)?;
    let Some(t) = find_invertible_intertwiner(&basis, rng_seed) else {
        return Ok(Verdict::Inequivalent(distinguishing_word(l, r, WITNESS_MAX_LEN)));
    };
    if let Some(sigma) = find_permutation_isomorphism(l, r)? {
        return Ok(Verdict::Isomorphic(sigma));
    }
    let pair = TransplantablePair {
        left: l.clone(),
        right: r.clone(),
        intertwiner: t.to_rational(),
        nonisomorphic: true,
    };
    debug_assert!(pair.verify().is_ok());
    Ok(Verdict::Transplantable(Box::new(pair)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(n: usize, a: &str, b: &str, c: &str) -> InvolutionTriple {
        InvolutionTriple::from_cycles(n, a, b, c).unwrap()
    }

    #[test]
    fn basis_for_equal_swap_triples_is_identity_and_swap() {
        let t = triple(2, "(1 2)", "", "");
        let basis = intertwiner_basis(&t, &t).unwrap();
        assert_eq!(basis.len(), 2);
        let id = IntMatrix::identity(2);
        let swap = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert!(basis.contains(&id));
        assert!(basis.contains(&swap));
    }

    #[test]
    fn basis_for_swap_vs_identity_has_equal_columns_and_no_invertible() {
        let l = triple(2, "(1 2)", "", "");
        let r = triple(2, "", "", "");
        let basis = intertwiner_basis(&l, &r).unwrap();
        assert_eq!(basis.len(), 2);
        for m in &basis {
            for i in 0..2 {
                assert_eq!(m[(i, 0)], m[(i, 1)]);
            }
        }
        assert!(find_invertible_intertwiner(&basis, 0x5EED).is_none());
        assert!(!linearly_equivalent(&l, &r));
    }

    #[test]
    fn basis_for_equal_triples_contains_identity_combination() {
        let t = triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)");
        let basis = intertwiner_basis(&t, &t).unwrap();
        let found = find_invertible_intertwiner(&basis, 0x5EED).unwrap();
        assert!(!found.determinant().is_zero());
        // The diagonal orbit of (i, i) gives the identity inside the span.
        assert!(basis.iter().any(|m| *m == IntMatrix::identity(4)));
    }

    #[test]
    fn orbit_basis_matches_rational_elimination_dimension() {
        // Independent oracle: solve the 3n^2 x n^2 homogeneous system
        // T P_x(l) - P_x(r) T = 0 by exact elimination and compare ranks.
        let cases = [
            (triple(3, "(1 2)", "(2 3)", "(1 3)"), triple(3, "(1 3)", "(1 2)", "(2 3)")),
            (triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)"), triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)")),
            (triple(2, "(1 2)", "", ""), triple(2, "", "", "")),
        ];
        for (l, r) in cases {
            let n = l.n();
            let mut rows = Vec::new();
            for g in Gen::ALL {
                let xl = l.gen(g);
                let xr = r.gen(g);
                // Row for equation (i, j): T[i, xl(j)] - T[xr(i), j] = 0.
                for i in 0..n {
                    for j in 0..n {
                        let mut row = vec![0i64; n * n];
                        row[i * n + xl.apply(j)] += 1;
                        row[xr.apply(i) * n + j] -= 1;
                        rows.push(row);
                    }
                }
            }
            let system = IntMatrix::from_rows(rows).to_rational();
            let dim = system.nullspace().len();
            assert_eq!(dim, intertwiner_basis(&l, &r).unwrap().len());
        }
    }

    #[test]
    fn fingerprint_examples() {
        let t = triple(4, "", "", "");
        let fp = fingerprint(&t, 3);
        assert!(fp.counts.iter().all(|&c| c == 4));

        let l = triple(2, "(1 2)", "", "");
        let r = triple(2, "", "", "");
        let w = distinguishing_word(&l, &r, 6).unwrap();
        assert_eq!(w.to_string(), "a");
    }

    #[test]
    fn isomorphism_search_finds_and_verifies() {
        let l = triple(3, "(1 2)", "", "");
        let r = triple(3, "(2 3)", "", "");
        let sigma = find_permutation_isomorphism(&l, &r).unwrap().unwrap();
        assert_eq!(l.relabel(&sigma), r);

        let t = triple(3, "(1 2)", "(2 3)", "(1 3)");
        let sigma = find_permutation_isomorphism(&t, &t).unwrap().unwrap();
        assert_eq!(t.relabel(&sigma), t);
    }

    #[test]
    fn check_pipeline_basic_verdicts() {
        let t = triple(3, "(1 2)", "(2 3)", "(1 3)");
        match check_transplantable(&t, &t, 0x5EED).unwrap() {
            Verdict::Isomorphic(sigma) => assert_eq!(t.relabel(&sigma), t),
            v => panic!("expected isomorphic, got {v:?}"),
        }
        let l = triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)");
        let r = triple(4, "(1 2)", "(2 3)", "(1 4)");
        match check_transplantable(&l, &r, 0x5EED).unwrap() {
            Verdict::Inequivalent(Some(w)) => assert_eq!(w.to_string(), "a"),
            v => panic!("expected inequivalent with witness 'a', got {v:?}"),
        }
    }

    #[test]
    fn check_rejects_non_transitive_and_size_mismatch() {
        let l = triple(3, "(1 2)", "", "");
        assert_eq!(
            check_transplantable(&l, &l, 0).unwrap_err(),
            TransplantError::NotTransitive
        );
        let r = triple(4, "(1 2)", "(2 3)", "(3 4)");
        let t3 = triple(3, "(1 2)", "(2 3)", "(1 3)");
        assert_eq!(
            check_transplantable(&t3, &r, 0).unwrap_err(),
            TransplantError::SizeMismatch(3, 4)
        );
    }

    #[test]
    fn zero_one_search_handles_disjoint_supports() {
        let t = triple(3, "(1 2)", "(2 3)", "(1 3)");
        let basis = intertwiner_basis(&t, &t).unwrap();
        let m = find_zero_one_intertwiner(&basis, 1 << 12).unwrap();
        assert!(!m.determinant().is_zero());
        for i in 0..3 {
            for j in 0..3 {
                assert!(m[(i, j)] == 0 || m[(i, j)] == 1);
            }
        }
    }

    #[test]
    fn filter_soundness_spot_check() {
        // Random-ish inequivalent triples: fingerprint mismatch must imply
        // no invertible intertwiner in the basis span.
        let pairs = [
            (triple(4, "(1 2)", "(2 3)", "(3 4)"), triple(4, "(1 2)(3 4)", "(2 3)", "(1 4)")),
            (triple(5, "(1 2)", "(2 3)", "(4 5)"), triple(5, "(1 2)(4 5)", "(2 3)", "(3 4)")),
            (triple(6, "(1 2)(3 4)", "(2 3)(5 6)", "(4 5)"), triple(6, "(1 2)", "(2 3)(4 5)", "(5 6)")),
        ];
        for (l, r) in pairs {
            if fingerprint(&l, 6) != fingerprint(&r, 6) {
                let basis = intertwiner_basis(&l, &r).unwrap();
                assert!(find_invertible_intertwiner(&basis, 0x5EED).is_none());
            }
        }
    }
}
