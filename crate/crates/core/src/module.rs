//! Z[Z_m]-modules that are free as Z-modules, described by construction
//! trees so the generator action can be applied without materializing
//! large matrices: the trivial module Z, the group ring Z(m), the
//! augmentation ideal I(m) with basis {t^i - 1}, tensor products with
//! diagonal (or Chinese-remainder) action, direct sums, and restrictions
//! to subgroups. Equivariant homomorphisms carry their integer matrix and
//! are checked for equivariance.

use crate::abelian::{subquotient, AbelianPresentation};
use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix};
use crate::ring::CyclicRingElement;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    /// Z with the trivial action.
    Trivial,
    /// The group ring Z(m), basis t^0..t^{m-1}, t acting by rotation.
    Regular,
    /// The augmentation ideal I(m), basis {t^i - 1 : 1 <= i <= m-1}.
    AugIdeal,
    /// Tensor product over Z. For equal moduli the action is diagonal;
    /// for coprime moduli the generator of Z_{lcm} acts through both
    /// factors (the Chinese remainder identification 1 -> (1,1)).
    Tensor(Arc<GModule>, Arc<GModule>),
    DirectSum(Arc<GModule>, Arc<GModule>),
    /// Restriction along a subgroup inclusion: the generator acts as
    /// t^power of the inner module.
    Restricted { inner: Arc<GModule>, power: u64 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct GModule {
    modulus: u64,
    rank: usize,
    kind: ModuleKind,
}

/// Residue c mod pq with c = a mod p, c = b mod q (gcd(p,q) = 1).
pub fn crt_residue(p: u64, q: u64, a: u64, b: u64) -> u64 {
    assert_eq!(p.gcd(&q), 1);
    let (a, b) = (a % p, b % q);
    for c in 0..p * q {
        if c % p == a && c % q == b {
            return c;
        }
    }
    unreachable!("crt residue exists for coprime moduli")
}

impl GModule {
    pub fn trivial(m: u64) -> Result<Self> {
        Self::check_modulus(m)?;
        Ok(GModule {
            modulus: m,
            rank: 1,
            kind: ModuleKind::Trivial,
        })
    }

    pub fn regular(m: u64) -> Result<Self> {
        Self::check_modulus(m)?;
        Ok(GModule {
            modulus: m,
            rank: m as usize,
            kind: ModuleKind::Regular,
        })
    }

    pub fn aug_ideal(m: u64) -> Result<Self> {
        Self::check_modulus(m)?;
        Ok(GModule {
            modulus: m,
            rank: m as usize - 1,
            kind: ModuleKind::AugIdeal,
        })
    }

    fn check_modulus(m: u64) -> Result<()> {
        if m < 2 {
            Err(Error::input(format!("group order must be >= 2, got {m}")))
        } else {
            Ok(())
        }
    }

    /// Tensor product with diagonal action; moduli must agree.
    pub fn tensor(a: &GModule, b: &GModule) -> Result<Self> {
        if a.modulus != b.modulus {
            return Err(Error::input(format!(
                "tensor: modulus mismatch {} vs {}",
                a.modulus, b.modulus
            )));
        }
        Ok(Self::tensor_unchecked(a, b))
    }

    /// Tensor product over coprime groups: a Z_pq-module via 1 -> (1,1).
    pub fn crt_tensor(a: &GModule, b: &GModule) -> Result<Self> {
        if a.modulus.gcd(&b.modulus) != 1 {
            return Err(Error::input(format!(
                "crt tensor: moduli {} and {} are not coprime",
                a.modulus, b.modulus
            )));
        }
        Ok(Self::tensor_unchecked(a, b))
    }

    fn tensor_unchecked(a: &GModule, b: &GModule) -> Self {
        GModule {
            modulus: a.modulus.lcm(&b.modulus),
            rank: a.rank * b.rank,
            kind: ModuleKind::Tensor(Arc::new(a.clone()), Arc::new(b.clone())),
        }
    }

    pub fn tensor_power(m: &GModule, k: usize) -> Result<Self> {
        assert!(k >= 1);
        let mut out = m.clone();
        for _ in 1..k {
            out = Self::tensor(&out, m)?;
        }
        Ok(out)
    }

    pub fn direct_sum(a: &GModule, b: &GModule) -> Result<Self> {
        if a.modulus != b.modulus {
            return Err(Error::input(format!(
                "direct sum: modulus mismatch {} vs {}",
                a.modulus, b.modulus
            )));
        }
        Ok(GModule {
            modulus: a.modulus,
            rank: a.rank + b.rank,
            kind: ModuleKind::DirectSum(Arc::new(a.clone()), Arc::new(b.clone())),
        })
    }

    /// Restriction along Z_d -> Z_m where the generator of Z_d maps to
    /// t^power; requires power*d = 0 mod m so the restricted action has
    /// order dividing d.
    pub fn restrict(inner: &GModule, d: u64, power: u64) -> Result<Self> {
        Self::check_modulus(d)?;
        if (power as u128 * d as u128) % inner.modulus as u128 != 0 {
            return Err(Error::input("restriction power incompatible with order"));
        }
        Ok(GModule {
            modulus: d,
            rank: inner.rank,
            kind: ModuleKind::Restricted {
                inner: Arc::new(inner.clone()),
                power,
            },
        })
    }

    /// Restriction of a Z_pq-module to the p-factor, p | m coprime to m/p:
    /// the generator of Z_p is the CRT element (1, 0).
    pub fn restrict_to_factor(inner: &GModule, p: u64) -> Result<Self> {
        let m = inner.modulus;
        if m % p != 0 || p.gcd(&(m / p)) != 1 {
            return Err(Error::input(format!(
                "{p} is not a coprime factor of {m}"
            )));
        }
        let e = crt_residue(p, m / p, 1, 0);
        Self::restrict(inner, p, e)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    /// Action of the generator, applied structurally (no large matrices).
    pub fn apply_gen(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.rank, "vector length != rank");
        match &self.kind {
            ModuleKind::Trivial => v.to_vec(),
            ModuleKind::Regular => {
                let m = self.rank;
                let mut out = vec![Int::zero(); m];
                for i in 0..m {
                    if !v[i].is_zero() {
                        out[(i + 1) % m] = v[i].clone();
                    }
                }
                out
            }
            ModuleKind::AugIdeal => {
                // t*(t^i - 1) = (t^{i+1} - 1) - (t - 1), index m wrapping
                // to the zero combination.
                let r = self.rank;
                let mut out = vec![Int::zero(); r];
                let mut e1 = Int::zero();
                for i in 0..r {
                    if v[i].is_zero() {
                        continue;
                    }
                    if i + 1 < r {
                        out[i + 1] += &v[i];
                    }
                    e1 -= &v[i];
                }
                out[0] += e1;
                out
            }
            ModuleKind::Tensor(a, b) => {
                let (ra, rb) = (a.rank, b.rank);
                let mut out = vec![Int::zero(); self.rank];
                // rows: apply a-action to each b-column bundle
                let mut tmp_col = vec![Int::zero(); ra];
                let mut mid = vec![Int::zero(); self.rank];
                for j in 0..rb {
                    for i in 0..ra {
                        tmp_col[i] = v[i * rb + j].clone();
                    }
                    let ta = a.apply_gen(&tmp_col);
                    for i in 0..ra {
                        mid[i * rb + j] = ta[i].clone();
                    }
                }
                for i in 0..ra {
                    let tb = b.apply_gen(&mid[i * rb..(i + 1) * rb]);
                    out[i * rb..(i + 1) * rb].clone_from_slice(&tb);
                }
                out
            }
            ModuleKind::DirectSum(a, b) => {
                let mut out = a.apply_gen(&v[..a.rank]);
                out.extend(b.apply_gen(&v[a.rank..]));
                out
            }
            ModuleKind::Restricted { inner, power } => {
                inner.apply_gen_pow(v, *power)
            }
        }
    }

    pub fn apply_gen_pow(&self, v: &[Int], k: u64) -> Vec<Int> {
        let k = k % self.order_bound();
        let mut out = v.to_vec();
        for _ in 0..k {
            out = self.apply_gen(&out);
        }
        out
    }

    fn order_bound(&self) -> u64 {
        match &self.kind {
            ModuleKind::Restricted { inner, .. } => inner.modulus.lcm(&self.modulus),
            _ => self.modulus,
        }
    }

    /// Action of a group-ring element; the element's modulus must equal the
    /// module's.
    pub fn apply_elem(&self, x: &CyclicRingElement, v: &[Int]) -> Vec<Int> {
        assert_eq!(x.modulus(), self.modulus, "ring element modulus mismatch");
        let mut acc = vec![Int::zero(); self.rank];
        let mut w = v.to_vec();
        for c in 0..self.modulus as usize {
            let coeff = x.coeff(c);
            if !coeff.is_zero() {
                for (a, b) in acc.iter_mut().zip(&w) {
                    if !b.is_zero() {
                        *a += coeff * b;
                    }
                }
            }
            if c + 1 < self.modulus as usize {
                w = self.apply_gen(&w);
            }
        }
        acc
    }

    /// Materialized action matrix of the generator. Columnwise; intended
    /// for moderate ranks.
    pub fn action_matrix(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.rank, self.rank);
        let mut e = vec![Int::zero(); self.rank];
        for j in 0..self.rank {
            e[j] = Int::from(1);
            let col = self.apply_gen(&e);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    t.set(i, j, v.clone());
                }
            }
            e[j] = Int::zero();
        }
        t
    }

    /// Matrix of the action of a ring element, columnwise.
    pub fn elem_matrix(&self, x: &CyclicRingElement) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rank, self.rank);
        let mut e = vec![Int::zero(); self.rank];
        for j in 0..self.rank {
            e[j] = Int::from(1);
            let col = self.apply_elem(x, &e);
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j, v.clone());
                }
            }
            e[j] = Int::zero();
        }
        out
    }

    /// ker(T - 1) as a free group, with the kernel basis as embedding.
    pub fn invariants(&self) -> AbelianPresentation {
        let t = self.action_matrix();
        let tmi = t.sub(&IntMatrix::identity(self.rank));
        let k = crate::snf::kernel_basis(&tmi);
        AbelianPresentation::free(k.cols(), Some(k))
    }

    /// coker(T - 1) as a presentation.
    pub fn coinvariants(&self) -> AbelianPresentation {
        let t = self.action_matrix();
        let tmi = t.sub(&IntMatrix::identity(self.rank));
        subquotient(&tmi, &IntMatrix::zeros(0, self.rank))
            .expect("coinvariants subquotient is always composable")
    }
}

impl fmt::Debug for GModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl GModule {
    pub fn label(&self) -> String {
        match &self.kind {
            ModuleKind::Trivial => "Z".to_string(),
            ModuleKind::Regular => format!("Z[Z_{}]", self.modulus),
            ModuleKind::AugIdeal => format!("I({})", self.modulus),
            ModuleKind::Tensor(a, b) => format!("{}(x){}", a.label(), b.label()),
            ModuleKind::DirectSum(a, b) => format!("({})(+)({})", a.label(), b.label()),
            ModuleKind::Restricted { inner, power } => {
                format!("Res[t^{power}]({})", inner.label())
            }
        }
    }
}

/// A homomorphism of Z[Z_m]-modules as an integer matrix, equivariance
/// checked at construction.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: GModule,
    pub target: GModule,
    pub matrix: IntMatrix,
}

impl ModuleHom {
    pub fn new(source: GModule, target: GModule, matrix: IntMatrix) -> Result<Self> {
        if source.modulus() != target.modulus() {
            return Err(Error::input("module hom: modulus mismatch"));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::input("module hom: matrix shape mismatch"));
        }
        let hom = ModuleHom {
            source,
            target,
            matrix,
        };
        hom.check_equivariance()?;
        Ok(hom)
    }

    fn check_equivariance(&self) -> Result<()> {
        let mut e = vec![Int::zero(); self.source.rank()];
        for j in 0..self.source.rank() {
            e[j] = Int::from(1);
            let te = self.source.apply_gen(&e);
            let lhs = self.matrix.mul_vec(&te);
            let rhs = self.target.apply_gen(&self.matrix.col(j));
            if lhs != rhs {
                return Err(Error::input(format!(
                    "module hom not equivariant at basis column {j}"
                )));
            }
            e[j] = Int::zero();
        }
        Ok(())
    }

    pub fn identity(m: &GModule) -> Self {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: IntMatrix::identity(m.rank()),
        }
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, inner: &ModuleHom) -> Result<Self> {
        if inner.target.rank() != self.source.rank() {
            return Err(Error::input("module hom composition shape mismatch"));
        }
        ModuleHom::new(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    /// Tensor of homomorphisms (Kronecker matrix), diagonal action.
    pub fn tensor(a: &ModuleHom, b: &ModuleHom) -> Result<Self> {
        let source = GModule::tensor_unchecked(&a.source, &b.source);
        let target = GModule::tensor_unchecked(&a.target, &b.target);
        ModuleHom::new(source, target, a.matrix.kron(&b.matrix))
    }
}

/// I(m) -> Z(m), basis vector t^i - 1 to its coefficient vector.
pub fn aug_ideal_inclusion(m: u64) -> Result<ModuleHom> {
    let src = GModule::aug_ideal(m)?;
    let tgt = GModule::regular(m)?;
    let mut mat = IntMatrix::zeros(m as usize, m as usize - 1);
    for i in 1..m as usize {
        mat.set(i, i - 1, Int::from(1));
        mat.set(0, i - 1, Int::from(-1));
    }
    ModuleHom::new(src, tgt, mat)
}

/// Augmentation Z(m) -> Z (coefficient sum).
pub fn augmentation_hom(m: u64) -> Result<ModuleHom> {
    let src = GModule::regular(m)?;
    let tgt = GModule::trivial(m)?;
    let mat = IntMatrix::from_fn(1, m as usize, |_, _| Int::from(1));
    ModuleHom::new(src, tgt, mat)
}

/// Expresses an augmentation-zero element of Z(m) in the I(m) basis
/// {t^i - 1}: the coordinates are just the coefficients of t^1..t^{m-1}.
pub fn regular_to_aug_ideal_coords(x: &[Int]) -> Result<Vec<Int>> {
    let mut s = Int::zero();
    for c in x {
        s += c;
    }
    if !s.is_zero() {
        return Err(Error::input(
            "element has nonzero augmentation, not in I(m)",
        ));
    }
    Ok(x[1..].to_vec())
}

/// A short exact sequence of modules 0 -> A -> B -> C -> 0, exactness
/// verified computationally at all three positions.
#[derive(Clone, Debug)]
pub struct SesModules {
    pub incl: ModuleHom,
    pub proj: ModuleHom,
}

impl SesModules {
    pub fn new(incl: ModuleHom, proj: ModuleHom) -> Result<Self> {
        if incl.target.rank() != proj.source.rank() {
            return Err(Error::input("ses: middle ranks differ"));
        }
        if !proj.matrix.mul(&incl.matrix).is_zero() {
            return Err(Error::input("ses: composite is nonzero"));
        }
        // injectivity on the left
        if crate::snf::kernel_basis(&incl.matrix).cols() != 0 {
            return Err(Error::input("ses: left map not injective"));
        }
        // surjectivity on the right: all invariant factors 1
        let dec = crate::snf::smith(&proj.matrix);
        if dec.rank != proj.target.rank() || !dec.invariant_factors().is_empty() {
            return Err(Error::input("ses: right map not surjective"));
        }
        // middle exactness: im(incl) = ker(proj) as lattices
        let ker = crate::snf::kernel_basis(&proj.matrix);
        if !crate::snf::lattice_equal(&ker, &incl.matrix) {
            return Err(Error::input("ses: im != ker at the middle"));
        }
        Ok(SesModules { incl, proj })
    }
}

/// 0 -> I(m) -> Z(m) -> Z -> 0.
pub fn ses_iq(m: u64) -> Result<SesModules> {
    SesModules::new(aug_ideal_inclusion(m)?, augmentation_hom(m)?)
}

/// The coefficient homomorphism
/// I(p)(x)Z(q) (+) Z(p)(x)I(q) -> Z(pq) = Z(p)(x)Z(q)
/// given by including both summands and adding. Lands in the augmentation
/// ideal (checked by the augmentation composite being zero).
pub fn phi_hom(p: u64, q: u64) -> Result<ModuleHom> {
    if p.gcd(&q) != 1 {
        return Err(Error::input(format!("phi: {p} and {q} are not coprime")));
    }
    let ip_zq = GModule::crt_tensor(&GModule::aug_ideal(p)?, &GModule::regular(q)?)?;
    let zp_iq = GModule::crt_tensor(&GModule::regular(p)?, &GModule::aug_ideal(q)?)?;
    let src = GModule::direct_sum(&ip_zq, &zp_iq)?;
    let tgt = GModule::regular(p * q)?;
    let mut mat = IntMatrix::zeros((p * q) as usize, src.rank());
    // first summand: (t_p^a - 1) (x) t_q^b  ->  t^{crt(a,b)} - t^{crt(0,b)}
    let mut col = 0usize;
    for a in 1..p {
        for b in 0..q {
            mat.add_to(crt_residue(p, q, a, b) as usize, col, &Int::from(1));
            mat.add_to(crt_residue(p, q, 0, b) as usize, col, &Int::from(-1));
            col += 1;
        }
    }
    // second summand: t_p^a (x) (t_q^b - 1)  ->  t^{crt(a,b)} - t^{crt(a,0)}
    for a in 0..p {
        for b in 1..q {
            mat.add_to(crt_residue(p, q, a, b) as usize, col, &Int::from(1));
            mat.add_to(crt_residue(p, q, a, 0) as usize, col, &Int::from(-1));
            col += 1;
        }
    }
    let hom = ModuleHom::new(src, tgt, mat)?;
    // image lies in the augmentation kernel
    let aug = augmentation_hom(p * q)?;
    if !aug.matrix.mul(&hom.matrix).is_zero() {
        return Err(Error::internal("phi image not in the augmentation ideal"));
    }
    Ok(hom)
}

/// The canonical isomorphism Z(p)(x)Z(q) -> Z(pq), t_p^a (x) t_q^b to
/// t^{crt(a,b)}.
pub fn crt_regular_iso(p: u64, q: u64) -> Result<ModuleHom> {
    if p.gcd(&q) != 1 {
        return Err(Error::input("crt iso: moduli not coprime"));
    }
    let src = GModule::crt_tensor(&GModule::regular(p)?, &GModule::regular(q)?)?;
    let tgt = GModule::regular(p * q)?;
    let mut mat = IntMatrix::zeros((p * q) as usize, (p * q) as usize);
    for a in 0..p {
        for b in 0..q {
            let col = (a * q + b) as usize;
            mat.set(crt_residue(p, q, a, b) as usize, col, Int::from(1));
        }
    }
    ModuleHom::new(src, tgt, mat)
}

/// The basis-permutation isomorphism
/// M_1 (x) ... (x) M_k  ->  M_{sigma(1)} (x) ... (x) M_{sigma(k)},
/// sending x_1 (x) ... (x) x_k to x_{sigma(1)} (x) ... (x) x_{sigma(k)}.
/// No signs: this is an automorphism of coefficients, not of complexes.
pub fn shuffle_auto(factors: &[GModule], sigma: &[usize]) -> Result<ModuleHom> {
    let k = factors.len();
    if k == 0 {
        return Err(Error::input("shuffle: empty factor list"));
    }
    if sigma.len() != k {
        return Err(Error::input("shuffle: permutation length mismatch"));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s >= k || seen[s] {
            return Err(Error::input("shuffle: not a permutation"));
        }
        seen[s] = true;
    }
    let modulus = factors
        .iter()
        .map(|f| f.modulus())
        .reduce(|a, b| a.lcm(&b))
        .unwrap();
    let tensor_of = |list: &[GModule]| -> GModule {
        let mut out = list[0].clone();
        for f in &list[1..] {
            out = GModule::tensor_unchecked(&out, f);
        }
        out
    };
    let src = tensor_of(factors);
    let permuted: Vec<GModule> = sigma.iter().map(|&s| factors[s].clone()).collect();
    let tgt = tensor_of(&permuted);
    if src.modulus() != modulus || tgt.modulus() != modulus {
        return Err(Error::input("shuffle: factors have incompatible moduli"));
    }
    // strides for source multi-indices, left factor major
    let ranks: Vec<usize> = factors.iter().map(|f| f.rank()).collect();
    let mut src_stride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        src_stride[i] = src_stride[i + 1] * ranks[i + 1];
    }
    let permuted_ranks: Vec<usize> = sigma.iter().map(|&s| ranks[s]).collect();
    let mut tgt_stride = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        tgt_stride[i] = tgt_stride[i + 1] * permuted_ranks[i + 1];
    }
    let total = src.rank();
    let mut mat = IntMatrix::zeros(total, total);
    let mut idx = vec![0usize; k];
    for col in 0..total {
        // decode col into the source multi-index
        let mut rem = col;
        for i in 0..k {
            idx[i] = rem / src_stride[i];
            rem %= src_stride[i];
        }
        let mut row = 0usize;
        for j in 0..k {
            row += idx[sigma[j]] * tgt_stride[j];
        }
        mat.set(row, col, Int::from(1));
    }
    ModuleHom::new(src, tgt, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, vec_int};
    use crate::snf::kernel_basis;

    #[test]
    fn action_orders() {
        for m in [2u64, 3, 5, 6] {
            for md in [
                GModule::trivial(m).unwrap(),
                GModule::regular(m).unwrap(),
                GModule::aug_ideal(m).unwrap(),
            ] {
                let t = md.action_matrix();
                let mut p = IntMatrix::identity(md.rank());
                for _ in 0..m {
                    p = t.mul(&p);
                }
                assert_eq!(p, IntMatrix::identity(md.rank()), "T^m != 1 for {md:?}");
            }
        }
    }

    #[test]
    fn aug_ideal_rank_two_action() {
        let i2 = GModule::aug_ideal(2).unwrap();
        assert_eq!(i2.rank(), 1);
        assert_eq!(i2.action_matrix(), IntMatrix::from_rows(vec![vec![-1]]));
        // tensor(I(2), I(2)) has rank 1, action +1
        let sq = GModule::tensor(&i2, &i2).unwrap();
        assert_eq!(sq.rank(), 1);
        assert_eq!(sq.action_matrix(), IntMatrix::from_rows(vec![vec![1]]));
    }

    #[test]
    fn direct_sum_ranks_add() {
        let a = GModule::aug_ideal(3).unwrap();
        let b = GModule::regular(3).unwrap();
        assert_eq!(GModule::direct_sum(&a, &b).unwrap().rank(), 5);
    }

    #[test]
    fn crt_tensor_action_order() {
        // I(2) (x) Z(3): action order 6
        let md = GModule::crt_tensor(
            &GModule::aug_ideal(2).unwrap(),
            &GModule::regular(3).unwrap(),
        )
        .unwrap();
        assert_eq!(md.rank(), 3);
        assert_eq!(md.modulus(), 6);
        let t = md.action_matrix();
        let mut p = IntMatrix::identity(3);
        let mut order = 0;
        for k in 1..=6 {
            p = t.mul(&p);
            if p == IntMatrix::identity(3) {
                order = k;
                break;
            }
        }
        assert_eq!(order, 6);
    }

    #[test]
    fn crt_regular_is_regular() {
        let iso = crt_regular_iso(2, 3).unwrap();
        // permutation matrix: each row/col has exactly one 1
        for i in 0..6 {
            let nnz_row: usize = (0..6)
                .filter(|&j| !iso.matrix.get(i, j).is_zero())
                .count();
            assert_eq!(nnz_row, 1);
        }
        // trivial (x) trivial over coprime orders is trivial of the product
        let tt = GModule::crt_tensor(
            &GModule::trivial(2).unwrap(),
            &GModule::trivial(3).unwrap(),
        )
        .unwrap();
        assert_eq!(tt.rank(), 1);
        assert_eq!(tt.action_matrix(), IntMatrix::identity(1));
        assert_eq!(tt.modulus(), 6);
    }

    #[test]
    fn invariants_of_regular_is_norm() {
        for m in [2u64, 3, 4, 6] {
            let md = GModule::regular(m).unwrap();
            let inv = md.invariants();
            assert_eq!(inv.free_rank(), 1);
            let basis = inv.embedding.as_ref().unwrap();
            // the invariant line is spanned by the norm (all ones), up to sign
            let ones = vec![int(1); m as usize];
            assert!(crate::snf::solve(basis, &ones).is_some());
        }
    }

    #[test]
    fn coinvariants_examples() {
        // coinvariants(Z(m)) = Z via the augmentation
        let c = GModule::regular(4).unwrap().coinvariants();
        assert_eq!(c.invariant_factors, vec_int(&[0]));
        // coinvariants(I(m)) = Z_m
        for m in [2u64, 3, 5, 6] {
            let c = GModule::aug_ideal(m).unwrap().coinvariants();
            assert_eq!(c.invariant_factors, vec![int(m as i64)], "m={m}");
        }
    }

    #[test]
    fn ses_iq_exact() {
        for m in [2u64, 3, 4, 5, 6] {
            let ses = ses_iq(m).expect("ses exact");
            assert!(ses.proj.matrix.mul(&ses.incl.matrix).is_zero());
            // middle kernel rank m-1
            assert_eq!(
                kernel_basis(&ses.proj.matrix).cols(),
                m as usize - 1
            );
        }
    }

    #[test]
    fn phi_lands_in_aug_ideal() {
        let phi = phi_hom(2, 3).unwrap();
        assert_eq!(phi.source.rank(), 3 + 4);
        assert_eq!(phi.target.rank(), 6);
        // zero maps to zero, and a sample value has augmentation zero
        let mut v = vec![int(0); 7];
        v[0] = int(1);
        let img = phi.apply(&v);
        let s: Int = img.iter().sum();
        assert!(s.is_zero());
    }

    #[test]
    fn shuffle_identity_and_swap() {
        let i2 = GModule::aug_ideal(2).unwrap();
        let z3 = GModule::regular(3).unwrap();
        let a = GModule::crt_tensor(&i2, &z3).unwrap();
        let id = shuffle_auto(&[a.clone(), a.clone()], &[0, 1]).unwrap();
        assert_eq!(id.matrix, IntMatrix::identity(9));
        let swap = shuffle_auto(&[a.clone(), a.clone()], &[1, 0]).unwrap();
        let twice = swap.matrix.mul(&swap.matrix);
        assert_eq!(twice, IntMatrix::identity(9));
    }

    #[test]
    fn shuffle_interleave_equivariant() {
        // (I(p)(x)Z(q))^{(x)2} -> I(p)^{(x)2} (x) Z(q)^{(x)2}
        let (p, q) = (2u64, 3u64);
        let ip = GModule::aug_ideal(p).unwrap();
        let zq = GModule::regular(q).unwrap();
        let factors = vec![ip.clone(), zq.clone(), ip, zq];
        let sigma = vec![0, 2, 1, 3];
        let s = shuffle_auto(&factors, &sigma).unwrap();
        // involution on this interleave: applying the inverse permutation
        let inv = shuffle_auto(
            &sigma.iter().map(|&i| factors[i].clone()).collect::<Vec<_>>(),
            &[0, 2, 1, 3],
        )
        .unwrap();
        assert_eq!(inv.matrix.mul(&s.matrix), IntMatrix::identity(s.matrix.cols()));
    }

    #[test]
    fn restriction_to_factor() {
        // Z(6) restricted to the 2-factor: generator acts as t^3
        let z6 = GModule::regular(6).unwrap();
        let r = GModule::restrict_to_factor(&z6, 2).unwrap();
        assert_eq!(r.modulus(), 2);
        let t = r.action_matrix();
        assert_eq!(t.mul(&t), IntMatrix::identity(6));
        let e0 = {
            let mut v = vec![int(0); 6];
            v[0] = int(1);
            v
        };
        let moved = r.apply_gen(&e0);
        assert_eq!(moved[3], int(1));
    }
}
