//! PSL(2,11) and its two degree-11 coset actions.
//!
//! The group has two conjugacy classes of order-60 (icosahedral) subgroups,
//! swapped by the outer automorphism. The left-multiplication actions on
//! the two coset spaces are linearly equivalent but not isomorphic, which
//! makes involution triples acting transitively on the cosets into
//! candidate transplantable pairs of size 11.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Psl2Error {
    #[error("subgroup search failed: {0}")]
    SubgroupSearch(&'static str),
}

const P: u64 = 11;

/// Element of PSL(2,11) as a normalized 2x2 matrix over F11 modulo sign:
/// the first nonzero entry lies in 1..=5.
pub type Mat2 = [u64; 4];

fn normalize(m: Mat2) -> Mat2 {
    let lead = m.iter().copied().find(|&x| x != 0).unwrap_or(0);
    if lead > P / 2 {
        [P - m[0], P - m[1], P - m[2], P - m[3]].map(|x| x % P)
    } else {
        m
    }
}

fn mul(a: Mat2, b: Mat2) -> Mat2 {
    normalize([
        (a[0] * b[0] + a[1] * b[2]) % P,
        (a[0] * b[1] + a[1] * b[3]) % P,
        (a[2] * b[0] + a[3] * b[2]) % P,
        (a[2] * b[1] + a[3] * b[3]) % P,
    ])
}

const IDENT: Mat2 = [1, 0, 0, 1];

fn element_order(m: Mat2) -> usize {
    let mut acc = m;
    let mut ord = 1;
    while acc != IDENT {
        acc = mul(acc, m);
        ord += 1;
        debug_assert!(ord <= 11);
    }
    ord
}

fn inverse(m: Mat2) -> Mat2 {
    // det is +-1 after normalization; adjugate works modulo sign.
    normalize([m[3] % P, (P - m[1]) % P, (P - m[2]) % P, m[0] % P])
}

/// All 660 elements, sorted.
pub fn psl2_11_elements() -> Vec<Mat2> {
    let mut set = HashSet::new();
    for a in 0..P {
        for b in 0..P {
            for c in 0..P {
                for d in 0..P {
                    if (a * d + P * P - b * c) % P == 1 {
                        set.insert(normalize([a, b, c, d]));
                    }
                }
            }
        }
    }
    let mut v: Vec<Mat2> = set.into_iter().collect();
    v.sort();
    v
}

fn close_subgroup(gens: &[Mat2], cap: usize) -> Option<Vec<Mat2>> {
    let mut set: HashSet<Mat2> = HashSet::new();
    let mut frontier: Vec<Mat2> = vec![IDENT];
    set.insert(IDENT);
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = mul(x, g);
            if set.insert(y) {
                if set.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    let mut v: Vec<Mat2> = set.into_iter().collect();
    v.sort();
    Some(v)
}

fn conjugate_subgroup(g: Mat2, h: &[Mat2]) -> Vec<Mat2> {
    let gi = inverse(g);
    let mut v: Vec<Mat2> = h.iter().map(|&x| mul(mul(g, x), gi)).collect();
    v.sort();
    v
}

/// Two order-60 subgroups that are not conjugate, found from (2,3)-pairs
/// with product of order 5.
pub fn icosahedral_subgroups(elements: &[Mat2]) -> Result<(Vec<Mat2>, Vec<Mat2>), Psl2Error> {
    let invs: Vec<Mat2> = elements.iter().copied().filter(|&m| element_order(m) == 2).collect();
    let threes: Vec<Mat2> = elements.iter().copied().filter(|&m| element_order(m) == 3).collect();
    let mut first: Option<Vec<Mat2>> = None;
    for &x in &invs {
        for &y in &threes {
            if element_order(mul(x, y)) != 5 {
                continue;
            }
            let Some(h) = close_subgroup(&[x, y], 60) else { continue };
            if h.len() != 60 {
                continue;
            }
            match &first {
                None => first = Some(h),
                Some(h1) => {
                    let conjugate = elements.iter().any(|&g| conjugate_subgroup(g, h1) == h);
                    if !conjugate {
                        return Ok((first.unwrap(), h));
                    }
                }
            }
        }
    }
    Err(Psl2Error::SubgroupSearch("no pair of nonconjugate order-60 subgroups found"))
}

/// Left-multiplication action on the left cosets of `h`, for each group
/// element of interest.
pub struct CosetAction {
    coset_of: HashMap<Mat2, usize>,
    reps: Vec<Mat2>,
}

impl CosetAction {
    pub fn new(elements: &[Mat2], h: &[Mat2]) -> CosetAction {
        let mut coset_of = HashMap::new();
        let mut reps = Vec::new();
        for &e in elements {
            if coset_of.contains_key(&e) {
                continue;
            }
            let id = reps.len();
            reps.push(e);
            for &x in h {
                coset_of.insert(mul(e, x), id);
            }
        }
        CosetAction { coset_of, reps }
    }

    pub fn degree(&self) -> usize {
        self.reps.len()
    }

    pub fn permutation_of(&self, g: Mat2) -> Permutation {
        let imgs: Vec<usize> =
            self.reps.iter().map(|&r| self.coset_of[&mul(g, r)]).collect();
        Permutation::from_images(imgs).expect("left multiplication permutes cosets")
    }
}

/// The whole degree-11 setup: every involution of PSL(2,11) with its two
/// coset permutations, sorted by the first action.
pub struct Psl2Actions {
    pub group_order: usize,
    pub degree: usize,
    /// (action on G/H1, action on G/H2) per involution.
    pub involutions: Vec<(Permutation, Permutation)>,
}

pub fn psl2_coset_actions() -> Result<Psl2Actions, Psl2Error> {
    let elements = psl2_11_elements();
    let (h1, h2) = icosahedral_subgroups(&elements)?;
    let act1 = CosetAction::new(&elements, &h1);
    let act2 = CosetAction::new(&elements, &h2);
    let mut involutions: Vec<(Permutation, Permutation)> = elements
        .iter()
        .copied()
        .filter(|&m| element_order(m) == 2)
        .map(|m| (act1.permutation_of(m), act2.permutation_of(m)))
        .collect();
    involutions.sort_by(|x, y| x.0.images().cmp(y.0.images()));
    Ok(Psl2Actions {
        group_order: elements.len(),
        degree: act1.degree(),
        involutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_is_660() {
        assert_eq!(psl2_11_elements().len(), 660);
    }

    #[test]
    fn involution_count_and_orders() {
        let els = psl2_11_elements();
        let invs = els.iter().filter(|&&m| element_order(m) == 2).count();
        assert_eq!(invs, 55);
        for &m in &els {
            let o = element_order(m);
            assert!([1, 2, 3, 5, 6, 11].contains(&o), "order {o}");
        }
    }

    #[test]
    fn coset_spaces_have_degree_11() {
        let actions = psl2_coset_actions().unwrap();
        assert_eq!(actions.group_order, 660);
        assert_eq!(actions.degree, 11);
        assert_eq!(actions.involutions.len(), 55);
        for (p1, p2) in &actions.involutions {
            assert!(p1.is_involution() && p2.is_involution());
        }
    }
}
