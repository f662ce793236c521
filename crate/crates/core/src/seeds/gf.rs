//! Small finite fields with table-driven arithmetic. Supports prime fields
//! and GF(4) built as F2[x]/(x^2 + x + 1) with elements ordered by
//! polynomial coefficients (0, 1, x, x+1).

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported field size {0}")]
    Unsupported(usize),
}

#[derive(Debug, Clone)]
pub struct Gf {
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Gf {
    pub fn new(q: usize) -> Result<Gf, FieldError> {
        if q == 4 {
            return Ok(Gf::gf4());
        }
        if q < 2 || q > 64 || !is_prime(q) {
            return Err(FieldError::Unsupported(q));
        }
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u8;
                mul[a * q + b] = ((a * b) % q) as u8;
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| (a * b) % q == 1).expect("prime field") as u8;
        }
        Ok(Gf { q, add, mul, inv })
    }

    fn gf4() -> Gf {
        let q = 4;
        // Bit 0: coefficient of 1, bit 1: coefficient of x; x^2 = x + 1.
        let mut add = vec![0u8; 16];
        let mut mul = vec![0u8; 16];
        for a in 0..4usize {
            for b in 0..4usize {
                add[a * q + b] = (a ^ b) as u8;
                let mut prod = 0usize;
                let mut aa = a;
                let mut bb = b;
                while bb != 0 {
                    if bb & 1 == 1 {
                        prod ^= aa;
                    }
                    aa <<= 1;
                    if aa & 4 != 0 {
                        aa = (aa ^ 4) ^ 3;
                    }
                    bb >>= 1;
                }
                mul[a * q + b] = prod as u8;
            }
        }
        let mut inv = vec![0u8; 4];
        for a in 1..4 {
            inv[a] = (1..4).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
        }
        Gf { q, add, mul, inv }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        (1..self.q as u8)
            .chain(std::iter::once(0))
            .find(|&b| self.add(a, b) == 0)
            .unwrap_or(0)
    }

    pub fn dot(&self, u: &[u8], v: &[u8]) -> u8 {
        u.iter().zip(v).fold(0u8, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Square matrices over a small field, row-major.
pub fn mat_mul(gf: &Gf, a: &[u8], b: &[u8], dim: usize) -> Vec<u8> {
    let mut out = vec![0u8; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let v = a[i * dim + k];
            if v == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = gf.add(out[i * dim + j], gf.mul(v, b[k * dim + j]));
            }
        }
    }
    out
}

pub fn mat_vec(gf: &Gf, m: &[u8], v: &[u8], dim: usize) -> Vec<u8> {
    (0..dim)
        .map(|i| v.iter().enumerate().fold(0u8, |acc, (j, &x)| gf.add(acc, gf.mul(m[i * dim + j], x))))
        .collect()
}

pub fn vec_mat(gf: &Gf, v: &[u8], m: &[u8], dim: usize) -> Vec<u8> {
    (0..dim)
        .map(|j| (0..dim).fold(0u8, |acc, i| gf.add(acc, gf.mul(v[i], m[i * dim + j]))))
        .collect()
}

/// Gauss-Jordan inverse; `None` for singular matrices.
pub fn mat_inv(gf: &Gf, m: &[u8], dim: usize) -> Option<Vec<u8>> {
    let mut a = m.to_vec();
    let mut inv = vec![0u8; dim * dim];
    for i in 0..dim {
        inv[i * dim + i] = 1;
    }
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| a[r * dim + col] != 0)?;
        if pivot != col {
            for j in 0..dim {
                a.swap(col * dim + j, pivot * dim + j);
                inv.swap(col * dim + j, pivot * dim + j);
            }
        }
        let piv_inv = gf.inv(a[col * dim + col]);
        for j in 0..dim {
            a[col * dim + j] = gf.mul(a[col * dim + j], piv_inv);
            inv[col * dim + j] = gf.mul(inv[col * dim + j], piv_inv);
        }
        for r in 0..dim {
            if r != col && a[r * dim + col] != 0 {
                let f = a[r * dim + col];
                let neg_f = gf.neg(f);
                for j in 0..dim {
                    let sub_a = gf.mul(neg_f, a[col * dim + j]);
                    let sub_i = gf.mul(neg_f, inv[col * dim + j]);
                    a[r * dim + j] = gf.add(a[r * dim + j], sub_a);
                    inv[r * dim + j] = gf.add(inv[r * dim + j], sub_i);
                }
            }
        }
    }
    Some(inv)
}

pub fn is_invertible(gf: &Gf, m: &[u8], dim: usize) -> bool {
    mat_inv(gf, m, dim).is_some()
}

/// Scale so the first nonzero entry is 1; `None` for the zero vector.
pub fn normalize_vec(gf: &Gf, v: &[u8]) -> Option<Vec<u8>> {
    let lead = v.iter().find(|&&x| x != 0)?;
    let s = gf.inv(*lead);
    Some(v.iter().map(|&x| gf.mul(s, x)).collect())
}

/// Scale a matrix so its first nonzero entry (row-major) is 1: the
/// canonical representative of its image in the projective group.
pub fn normalize_mat(gf: &Gf, m: &[u8]) -> Vec<u8> {
    match m.iter().find(|&&x| x != 0) {
        Some(&lead) => {
            let s = gf.inv(lead);
            m.iter().map(|&x| gf.mul(s, x)).collect()
        }
        None => m.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_is_a_field() {
        let f = Gf::new(4).unwrap();
        // x * x = x + 1 in the coefficient encoding: 2 * 2 = 3.
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        for a in 1..4u8 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, a), 0);
        }
    }

    #[test]
    fn prime_fields_and_rejection() {
        let f = Gf::new(11).unwrap();
        assert_eq!(f.mul(7, 8), (56 % 11) as u8);
        assert_eq!(f.add(9, 5), 3);
        assert_eq!(f.neg(4), 7);
        assert_eq!(Gf::new(6).unwrap_err(), FieldError::Unsupported(6));
    }

    #[test]
    fn matrix_inverse_round_trip() {
        let f = Gf::new(3).unwrap();
        let m = vec![2, 1, 0, 1, 1, 0, 0, 0, 1];
        let inv = mat_inv(&f, &m, 3).unwrap();
        let prod = mat_mul(&f, &m, &inv, 3);
        assert_eq!(prod, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        let singular = vec![1, 2, 0, 2, 1, 0, 0, 0, 0];
        assert!(mat_inv(&f, &singular, 3).is_none());
    }
}
