//! The group ring Z[Z_m]: elements are length-m integer coefficient
//! vectors indexed by powers of the generator t, multiplication is cyclic
//! convolution. Houses the augmentation and the norm element
//! N = 1 + t + ... + t^{m-1}.

use crate::matrix::Int;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct CyclicRingElement {
    modulus: u64,
    coeffs: Vec<Int>,
}

impl CyclicRingElement {
    pub fn zero(m: u64) -> Self {
        assert!(m >= 1);
        CyclicRingElement {
            modulus: m,
            coeffs: vec![Int::zero(); m as usize],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::gen_pow(m, 0)
    }

    /// t^k (k reduced mod m).
    pub fn gen_pow(m: u64, k: i64) -> Self {
        let mut e = Self::zero(m);
        let k = k.rem_euclid(m as i64) as usize;
        e.coeffs[k] = Int::one();
        e
    }

    /// The norm element t_m = sum of all group elements.
    pub fn norm(m: u64) -> Self {
        let mut e = Self::zero(m);
        for c in e.coeffs.iter_mut() {
            *c = Int::one();
        }
        e
    }

    /// t - 1.
    pub fn gen_minus_one(m: u64) -> Self {
        let mut e = Self::zero(m);
        e.coeffs[1 % m as usize] += Int::one();
        e.coeffs[0] -= Int::one();
        e
    }

    pub fn from_coeffs(m: u64, coeffs: Vec<Int>) -> Self {
        assert_eq!(coeffs.len(), m as usize);
        CyclicRingElement { modulus: m, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeff(&self, k: usize) -> &Int {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        CyclicRingElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        CyclicRingElement {
            modulus: self.modulus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CyclicRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, lambda: &Int) -> Self {
        CyclicRingElement {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|a| a * lambda).collect(),
        }
    }

    /// Cyclic convolution; t^m = 1.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let m = self.modulus as usize;
        let mut out = Self::zero(self.modulus);
        for i in 0..m {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[(i + j) % m] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    /// Augmentation: sum of coefficients.
    pub fn augmentation(&self) -> Int {
        let mut s = Int::zero();
        for c in &self.coeffs {
            s += c;
        }
        s
    }

    /// The involution t -> t^{-1}.
    pub fn antipode(&self) -> Self {
        let m = self.modulus as usize;
        let mut out = Self::zero(self.modulus);
        for (k, c) in self.coeffs.iter().enumerate() {
            out.coeffs[(m - k) % m] = c.clone();
        }
        out
    }
}

impl fmt::Debug for CyclicRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn t_times_t_m_minus_one_is_one() {
        let m = 5;
        let t = CyclicRingElement::gen_pow(m, 1);
        let tm1 = CyclicRingElement::gen_pow(m, m as i64 - 1);
        assert_eq!(t.mul(&tm1), CyclicRingElement::one(m));
    }

    #[test]
    fn norm_kills_gen_minus_one() {
        for m in [2u64, 3, 4, 6] {
            let n = CyclicRingElement::norm(m);
            let g = CyclicRingElement::gen_minus_one(m);
            assert!(n.mul(&g).is_zero());
        }
    }

    #[test]
    fn convolution_example() {
        // in Z(3): (1+t)*(1+t) = 1 + 2t + t^2
        let m = 3;
        let x = CyclicRingElement::from_coeffs(m, vec![int(1), int(1), int(0)]);
        let sq = x.mul(&x);
        assert_eq!(sq.coeffs(), &[int(1), int(2), int(1)]);
    }

    #[test]
    fn augmentation_multiplicative() {
        let m = 4;
        let x = CyclicRingElement::from_coeffs(m, vec![int(2), int(-1), int(0), int(3)]);
        let y = CyclicRingElement::from_coeffs(m, vec![int(1), int(1), int(-2), int(0)]);
        assert_eq!(
            x.mul(&y).augmentation(),
            x.augmentation() * y.augmentation()
        );
    }

    #[test]
    fn antipode_involutive() {
        let m = 6;
        let x = CyclicRingElement::from_coeffs(
            m,
            vec![int(1), int(2), int(3), int(4), int(5), int(6)],
        );
        assert_eq!(x.antipode().antipode(), x);
        assert_eq!(x.antipode().augmentation(), x.augmentation());
    }
}
