//! Chain complexes of finitely generated free Z[Z_m]-modules: the periodic
//! resolution W(m) of Z with its contracting homotopy, truncations (the
//! cellular chain complexes of lens spaces), and tensor products over
//! coprime group orders with the combined contracting homotopy
//! s(x)1 + (eta eps)(x)s. Differentials are matrices over the group ring;
//! contracting homotopies are plain integer matrices (they cannot be
//! equivariant and only Z-linearity is needed for lifting).
//!
//! Integer coordinates of a free module Z(m)^r are generator-major:
//! coordinate a*m + c is t^c g_a.

use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix};
use crate::module::crt_residue;
use crate::ring::CyclicRingElement;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::sync::Arc;

/// Matrix with group-ring entries; rows index target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<CyclicRingElement>,
}

impl RingMatrix {
    pub fn zeros(modulus: u64, rows: usize, cols: usize) -> Self {
        RingMatrix {
            modulus,
            rows,
            cols,
            entries: vec![CyclicRingElement::zero(modulus); rows * cols],
        }
    }

    pub fn identity(modulus: u64, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.set(i, i, CyclicRingElement::one(modulus));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclicRingElement {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclicRingElement) {
        assert!(i < self.rows && j < self.cols);
        assert_eq!(v.modulus(), self.modulus);
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.modulus, other.modulus);
        let mut out = RingMatrix::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Integer expansion: each ring entry x becomes the m x m matrix of
    /// left multiplication by x on Z(m) (generator-major layout).
    pub fn to_int(&self) -> IntMatrix {
        let m = self.modulus as usize;
        let mut out = IntMatrix::zeros(self.rows * m, self.cols * m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for cin in 0..m {
                    for (k, coeff) in x.coeffs().iter().enumerate() {
                        if coeff.is_zero() {
                            continue;
                        }
                        let cout = (k + cin) % m;
                        out.add_to(i * m + cout, j * m + cin, coeff);
                    }
                }
            }
        }
        out
    }
}

/// Contracting homotopy data for a resolution of Z: s_n : C_n -> C_{n+1}
/// for n = 0..s_top, the augmentation row on degree 0 and its section.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub s: Vec<IntMatrix>,
    pub aug: IntMatrix,
    pub section: IntMatrix,
}

#[derive(Clone, Debug)]
pub enum ComplexKind {
    Plain,
    /// Tensor product of the two factors (over coprime group orders).
    Tensor(Arc<FreeComplex>, Arc<FreeComplex>),
}

#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub label: String,
    modulus: u64,
    ranks: Vec<usize>,
    diffs: Vec<RingMatrix>,
    pub contraction: Option<Contraction>,
    pub kind: ComplexKind,
}

impl FreeComplex {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Ring-rank in degree n; zero above the top degree.
    pub fn rank(&self, n: usize) -> usize {
        if n < self.ranks.len() {
            self.ranks[n]
        } else {
            0
        }
    }

    /// Z-rank in degree n.
    pub fn dim(&self, n: usize) -> usize {
        self.rank(n) * self.modulus as usize
    }

    /// d_n : C_n -> C_{n-1} for 1 <= n <= top.
    pub fn diff(&self, n: usize) -> &RingMatrix {
        assert!(n >= 1 && n <= self.top(), "differential degree out of range");
        &self.diffs[n - 1]
    }

    pub fn diff_int(&self, n: usize) -> IntMatrix {
        self.diff(n).to_int()
    }

    /// Integer matrix of the generator action in degree n.
    pub fn action_int(&self, n: usize) -> IntMatrix {
        let m = self.modulus as usize;
        let r = self.rank(n);
        let mut out = IntMatrix::zeros(r * m, r * m);
        for a in 0..r {
            for c in 0..m {
                out.set(a * m + (c + 1) % m, a * m + c, Int::one());
            }
        }
        out
    }

    /// Applies the generator action structurally.
    pub fn apply_action(&self, n: usize, v: &[Int]) -> Vec<Int> {
        let m = self.modulus as usize;
        assert_eq!(v.len(), self.dim(n));
        let mut out = vec![Int::zero(); v.len()];
        for a in 0..self.rank(n) {
            for c in 0..m {
                if !v[a * m + c].is_zero() {
                    out[a * m + (c + 1) % m] = v[a * m + c].clone();
                }
            }
        }
        out
    }

    pub fn contraction_top(&self) -> Option<usize> {
        self.contraction.as_ref().map(|c| c.s.len() - 1)
    }

    /// d_{n-1} d_n = 0 in every degree.
    pub fn verify_dd(&self) -> bool {
        (2..=self.top()).all(|n| self.diff(n - 1).mul(self.diff(n)).is_zero())
    }

    /// The contracting-homotopy identities as exact matrix identities:
    /// d_1 s_0 = 1 - section aug, and d_{n+1} s_n + s_{n-1} d_n = 1 for
    /// 1 <= n <= s_top; plus aug d_1 = 0 and aug section = 1.
    pub fn verify_contraction(&self) -> Result<()> {
        let Some(ct) = &self.contraction else {
            return Err(Error::input("complex carries no contracting homotopy"));
        };
        let s_top = ct.s.len() - 1;
        if s_top + 1 > self.top() {
            return Err(Error::internal("homotopy extends beyond the complex"));
        }
        if ct.aug.mul(&ct.section) != IntMatrix::identity(1) {
            return Err(Error::internal("aug o section != 1"));
        }
        if !ct.aug.mul(&self.diff_int(1)).is_zero() {
            return Err(Error::internal("aug o d_1 != 0"));
        }
        let d1s0 = self.diff_int(1).mul(&ct.s[0]);
        let proj = IntMatrix::identity(self.dim(0)).sub(&ct.section.mul(&ct.aug));
        if d1s0 != proj {
            return Err(Error::internal("d_1 s_0 != 1 - section aug"));
        }
        for n in 1..=s_top {
            let lhs = self
                .diff_int(n + 1)
                .mul(&ct.s[n])
                .add(&ct.s[n - 1].mul(&self.diff_int(n)));
            if lhs != IntMatrix::identity(self.dim(n)) {
                return Err(Error::internal(format!(
                    "homotopy identity fails in degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Degree-<=-new_top truncation; drops the contracting homotopy (the
    /// truncation is no longer a resolution).
    pub fn truncate(&self, new_top: usize) -> FreeComplex {
        assert!(new_top <= self.top());
        FreeComplex {
            label: format!("{}|<={}", self.label, new_top),
            modulus: self.modulus,
            ranks: self.ranks[..=new_top].to_vec(),
            diffs: self.diffs[..new_top].to_vec(),
            contraction: None,
            kind: ComplexKind::Plain,
        }
    }
}

/// The periodic free resolution W(m) of Z over Z[Z_m]: rank one in every
/// degree, d odd = t - 1, d even = the norm. A contracting homotopy is
/// constructed degree by degree by exact integer solving and verified.
pub fn periodic_resolution(m: u64, top: usize) -> Result<FreeComplex> {
    if m < 2 {
        return Err(Error::input("group order must be >= 2"));
    }
    let mut diffs = Vec::new();
    for n in 1..=top {
        let x = if n % 2 == 1 {
            CyclicRingElement::gen_minus_one(m)
        } else {
            CyclicRingElement::norm(m)
        };
        let mut d = RingMatrix::zeros(m, 1, 1);
        d.set(0, 0, x);
        diffs.push(d);
    }
    let mut cx = FreeComplex {
        label: format!("W({m})"),
        modulus: m,
        ranks: vec![1; top + 1],
        diffs,
        contraction: None,
        kind: ComplexKind::Plain,
    };
    debug_assert!(cx.verify_dd());
    if top >= 1 {
        install_contraction(&mut cx)?;
        cx.verify_contraction()?;
    }
    Ok(cx)
}

/// Standard augmentation (coefficient sum) and section (the identity
/// generator) used by all complexes here: every degree-0 basis element is
/// a group translate of a single cell.
fn standard_aug_section(cx: &FreeComplex) -> (IntMatrix, IntMatrix) {
    let d0 = cx.dim(0);
    let aug = IntMatrix::from_fn(1, d0, |_, _| Int::one());
    let mut section = IntMatrix::zeros(d0, 1);
    section.set(0, 0, Int::one());
    (aug, section)
}

/// Builds s_n for n = 0..top-1 by solving d_{n+1} s_n = 1 - section aug
/// (n = 0) and d_{n+1} s_n = 1 - s_{n-1} d_n (n >= 1) columnwise.
fn install_contraction(cx: &mut FreeComplex) -> Result<()> {
    let (aug, section) = standard_aug_section(cx);
    let mut s: Vec<IntMatrix> = Vec::new();
    for n in 0..cx.top() {
        let target = if n == 0 {
            IntMatrix::identity(cx.dim(0)).sub(&section.mul(&aug))
        } else {
            IntMatrix::identity(cx.dim(n)).sub(&s[n - 1].mul(&cx.diff_int(n)))
        };
        let d = cx.diff_int(n + 1);
        let sn = crate::snf::solve_multi(&d, &target).ok_or_else(|| {
            Error::internal(format!("contraction solve failed in degree {n}"))
        })?;
        s.push(sn);
    }
    cx.contraction = Some(Contraction { s, aug, section });
    Ok(())
}

/// Cellular chain complex of the 2k-1 (or any n) skeleton lens space
/// L^n_p: the degree-<= n truncation of the periodic resolution. One cell
/// in each dimension; no contracting homotopy.
pub fn lens_complex(p: u64, n: usize) -> Result<FreeComplex> {
    if n < 1 {
        return Err(Error::input("lens complex needs dimension >= 1"));
    }
    let w = periodic_resolution(p, n)?;
    let mut cx = w.truncate(n);
    cx.label = format!("L({p};{n})");
    Ok(cx)
}

/// Ring element of Z(pq) representing x (x) y under the identification
/// Z(pq) = Z(p) (x) Z(q), t^c = t_p^{c mod p} (x) t_q^{c mod q}.
pub fn crt_ring(
    p: u64,
    q: u64,
    x: &CyclicRingElement,
    y: &CyclicRingElement,
) -> CyclicRingElement {
    assert_eq!(x.modulus(), p);
    assert_eq!(y.modulus(), q);
    let mut coeffs = vec![Int::zero(); (p * q) as usize];
    for (u, xu) in x.coeffs().iter().enumerate() {
        if xu.is_zero() {
            continue;
        }
        for (v, yv) in y.coeffs().iter().enumerate() {
            if yv.is_zero() {
                continue;
            }
            let c = crt_residue(p, q, u as u64, v as u64) as usize;
            coeffs[c] += xu * yv;
        }
    }
    CyclicRingElement::from_coeffs(p * q, coeffs)
}

/// Block layout of a tensor complex: degree n splits into bidegree blocks
/// (i, j = n - i), ascending in i, generators ordered left factor major.
pub struct TensorLayout {
    pub left_ranks: Vec<usize>,
    pub right_ranks: Vec<usize>,
}

impl TensorLayout {
    pub fn of(cx: &FreeComplex) -> Option<TensorLayout> {
        match &cx.kind {
            ComplexKind::Tensor(l, r) => Some(TensorLayout {
                left_ranks: (0..=l.top()).map(|n| l.rank(n)).collect(),
                right_ranks: (0..=r.top()).map(|n| r.rank(n)).collect(),
            }),
            _ => None,
        }
    }

    pub fn blocks(&self, n: usize) -> Vec<(usize, usize)> {
        let lt = self.left_ranks.len() - 1;
        let rt = self.right_ranks.len() - 1;
        let lo = n.saturating_sub(rt);
        let hi = n.min(lt);
        (lo..=hi).map(|i| (i, n - i)).collect()
    }

    /// Ring-generator offset of block (i, n-i) within degree n.
    pub fn gen_offset(&self, n: usize, i: usize) -> usize {
        self.blocks(n)
            .iter()
            .take_while(|(bi, _)| *bi < i)
            .map(|(bi, bj)| self.left_ranks[*bi] * self.right_ranks[*bj])
            .sum()
    }

    /// Ring-generator index of g_a (x) g_b in bidegree (i, j).
    pub fn gen_index(&self, i: usize, j: usize, a: usize, b: usize) -> usize {
        self.gen_offset(i + j, i) + a * self.right_ranks[j] + b
    }
}

/// Tensor product of complexes over coprime group orders, with the Koszul
/// sign d(a (x) b) = da (x) b + (-1)^|a| a (x) db, producing a free complex
/// over Z_pq. When both factors carry contracting homotopies the combined
/// homotopy s (x) 1 + (eta eps) (x) s is installed and verified.
pub fn tensor_complex(left: &Arc<FreeComplex>, right: &Arc<FreeComplex>) -> Result<FreeComplex> {
    let p = left.modulus();
    let q = right.modulus();
    if p.gcd(&q) != 1 {
        return Err(Error::input(format!(
            "tensor complex: group orders {p} and {q} are not coprime"
        )));
    }
    let top = left.top() + right.top();
    let layout = TensorLayout {
        left_ranks: (0..=left.top()).map(|n| left.rank(n)).collect(),
        right_ranks: (0..=right.top()).map(|n| right.rank(n)).collect(),
    };
    let ranks: Vec<usize> = (0..=top)
        .map(|n| {
            layout
                .blocks(n)
                .iter()
                .map(|(i, j)| left.rank(*i) * right.rank(*j))
                .sum()
        })
        .collect();
    let m = p * q;
    let mut diffs = Vec::new();
    for n in 1..=top {
        let mut d = RingMatrix::zeros(m, ranks[n - 1], ranks[n]);
        for (i, j) in layout.blocks(n) {
            for a in 0..left.rank(i) {
                for b in 0..right.rank(j) {
                    let col = layout.gen_index(i, j, a, b);
                    if i >= 1 {
                        let dl = left.diff(i);
                        for a1 in 0..left.rank(i - 1) {
                            let x = dl.get(a1, a);
                            if x.is_zero() {
                                continue;
                            }
                            let row = layout.gen_index(i - 1, j, a1, b);
                            let v = crt_ring(p, q, x, &CyclicRingElement::one(q));
                            let cur = d.get(row, col).add(&v);
                            d.set(row, col, cur);
                        }
                    }
                    if j >= 1 {
                        let dr = right.diff(j);
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        for b1 in 0..right.rank(j - 1) {
                            let y = dr.get(b1, b);
                            if y.is_zero() {
                                continue;
                            }
                            let row = layout.gen_index(i, j - 1, a, b1);
                            let mut v = crt_ring(p, q, &CyclicRingElement::one(p), y);
                            if sign < 0 {
                                v = v.neg();
                            }
                            let cur = d.get(row, col).add(&v);
                            d.set(row, col, cur);
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    let mut cx = FreeComplex {
        label: format!("{}(x){}", left.label, right.label),
        modulus: m,
        ranks,
        diffs,
        contraction: None,
        kind: ComplexKind::Tensor(Arc::clone(left), Arc::clone(right)),
    };
    if !cx.verify_dd() {
        return Err(Error::internal("tensor complex: dd != 0"));
    }
    if left.contraction.is_some() && right.contraction.is_some() {
        install_tensor_contraction(&mut cx, left, right, &layout)?;
        cx.verify_contraction()?;
    }
    Ok(cx)
}

/// Canonical integer coordinate of t_p^{cp} g_a (x) t_q^{cq} g_b in
/// degree i+j of the tensor complex.
fn tensor_coord(
    layout: &TensorLayout,
    p: u64,
    q: u64,
    i: usize,
    j: usize,
    a: usize,
    cp: u64,
    b: usize,
    cq: u64,
) -> usize {
    let gen = layout.gen_index(i, j, a, b);
    gen * (p * q) as usize + crt_residue(p, q, cp, cq) as usize
}

fn install_tensor_contraction(
    cx: &mut FreeComplex,
    left: &FreeComplex,
    right: &FreeComplex,
    layout: &TensorLayout,
) -> Result<()> {
    let p = left.modulus();
    let q = right.modulus();
    let cl = left.contraction.as_ref().unwrap();
    let cr = right.contraction.as_ref().unwrap();
    let s_top = left
        .contraction_top()
        .unwrap()
        .min(right.contraction_top().unwrap())
        .min(cx.top() - 1);
    let mut s = Vec::new();
    for n in 0..=s_top {
        let mut sn = IntMatrix::zeros(cx.dim(n + 1), cx.dim(n));
        for (i, j) in layout.blocks(n) {
            for a in 0..left.rank(i) {
                for b in 0..right.rank(j) {
                    for c in 0..p * q {
                        let colidx = tensor_coord(layout, p, q, i, j, a, c % p, b, c % q);
                        // s (x) 1 : apply s_left in degree i
                        let sl = &cl.s[i];
                        let src = a * p as usize + (c % p) as usize;
                        for a1 in 0..left.rank(i + 1) {
                            for x1 in 0..p {
                                let v = sl.get(a1 * p as usize + x1 as usize, src);
                                if v.is_zero() {
                                    continue;
                                }
                                let row =
                                    tensor_coord(layout, p, q, i + 1, j, a1, x1, b, c % q);
                                sn.add_to(row, colidx, v);
                            }
                        }
                        // (eta eps) (x) s on the i = 0 blocks
                        if i == 0 {
                            let alpha = cl.aug.get(0, src).clone();
                            if alpha.is_zero() {
                                continue;
                            }
                            let sr = &cr.s[j];
                            let srcq = b * q as usize + (c % q) as usize;
                            for a0 in 0..left.rank(0) {
                                for x0 in 0..p {
                                    let sec =
                                        cl.section.get(a0 * p as usize + x0 as usize, 0);
                                    if sec.is_zero() {
                                        continue;
                                    }
                                    for b1 in 0..right.rank(j + 1) {
                                        for y1 in 0..q {
                                            let w = sr
                                                .get(b1 * q as usize + y1 as usize, srcq);
                                            if w.is_zero() {
                                                continue;
                                            }
                                            let row = tensor_coord(
                                                layout, p, q, 0, j + 1, a0, x0, b1, y1,
                                            );
                                            let val = &alpha * sec * w;
                                            sn.add_to(row, colidx, &val);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        s.push(sn);
    }
    // augmentation and section in canonical coordinates
    let d0 = cx.dim(0);
    let mut aug = IntMatrix::zeros(1, d0);
    for a in 0..left.rank(0) {
        for b in 0..right.rank(0) {
            for c in 0..p * q {
                let col = tensor_coord(layout, p, q, 0, 0, a, c % p, b, c % q);
                let va = cl.aug.get(0, a * p as usize + (c % p) as usize);
                let vb = cr.aug.get(0, b * q as usize + (c % q) as usize);
                aug.set(0, col, va * vb);
            }
        }
    }
    let mut section = IntMatrix::zeros(d0, 1);
    for a in 0..left.rank(0) {
        for xp in 0..p {
            let sa = cl.section.get(a * p as usize + xp as usize, 0);
            if sa.is_zero() {
                continue;
            }
            for b in 0..right.rank(0) {
                for yq in 0..q {
                    let sb = cr.section.get(b * q as usize + yq as usize, 0);
                    if sb.is_zero() {
                        continue;
                    }
                    let row = tensor_coord(layout, p, q, 0, 0, a, xp, b, yq);
                    section.set(row, 0, sa * sb);
                }
            }
        }
    }
    cx.contraction = Some(Contraction { s, aug, section });
    Ok(())
}

/// A degree-preserving map of complexes over the same group, commuting
/// with the differentials (checked).
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Arc<FreeComplex>,
    pub target: Arc<FreeComplex>,
    pub mats: Vec<RingMatrix>,
}

impl ChainMap {
    pub fn new(
        source: Arc<FreeComplex>,
        target: Arc<FreeComplex>,
        mats: Vec<RingMatrix>,
    ) -> Result<Self> {
        if source.modulus() != target.modulus() {
            return Err(Error::input("chain map: group orders differ"));
        }
        let f = ChainMap {
            source,
            target,
            mats,
        };
        f.verify()?;
        Ok(f)
    }

    pub fn mat(&self, n: usize) -> &RingMatrix {
        &self.mats[n]
    }

    fn verify(&self) -> Result<()> {
        let top = self.mats.len() - 1;
        if top > self.source.top() || top > self.target.top() {
            return Err(Error::input("chain map: degree range too large"));
        }
        for (n, f) in self.mats.iter().enumerate() {
            if f.rows != self.target.rank(n) || f.cols != self.source.rank(n) {
                return Err(Error::input(format!("chain map: shape mismatch at {n}")));
            }
        }
        for n in 1..=top {
            let lhs = self.target.diff(n).mul(&self.mats[n]);
            let rhs = self.mats[n - 1].mul(self.source.diff(n));
            if lhs != rhs {
                return Err(Error::input(format!(
                    "chain map does not commute with d in degree {n}"
                )));
            }
        }
        Ok(())
    }
}

/// The chain-level classifying map of the lens space: the truncation
/// inclusion lens_complex(p, n) -> W(p), identity in every degree <= n.
pub fn classifying_chain_map(
    lens: &Arc<FreeComplex>,
    w: &Arc<FreeComplex>,
) -> Result<ChainMap> {
    if w.top() < lens.top() {
        return Err(Error::input("target resolution shorter than the lens complex"));
    }
    let m = lens.modulus();
    let mats = (0..=lens.top())
        .map(|n| {
            assert_eq!(lens.rank(n), w.rank(n));
            RingMatrix::identity(m, lens.rank(n))
        })
        .collect();
    ChainMap::new(Arc::clone(lens), Arc::clone(w), mats)
}

/// Tensor of chain maps between tensor complexes over the same coprime
/// factor pair; both maps have degree zero, so no Koszul signs appear.
pub fn tensor_chain_map(
    f: &ChainMap,
    g: &ChainMap,
    source: &Arc<FreeComplex>,
    target: &Arc<FreeComplex>,
) -> Result<ChainMap> {
    let src_layout = TensorLayout::of(source)
        .ok_or_else(|| Error::input("source is not a tensor complex"))?;
    let tgt_layout = TensorLayout::of(target)
        .ok_or_else(|| Error::input("target is not a tensor complex"))?;
    let p = f.source.modulus();
    let q = g.source.modulus();
    let top = source.top().min(target.top()).min(
        f.mats.len() - 1 + g.mats.len() - 1,
    );
    let mut mats = Vec::new();
    for n in 0..=top {
        let mut fm = RingMatrix::zeros(p * q, target.rank(n), source.rank(n));
        for (i, j) in src_layout.blocks(n) {
            if i >= f.mats.len() || j >= g.mats.len() {
                continue;
            }
            for a in 0..f.source.rank(i) {
                for b in 0..g.source.rank(j) {
                    let col = src_layout.gen_index(i, j, a, b);
                    for a1 in 0..f.target.rank(i) {
                        let x = f.mats[i].get(a1, a);
                        if x.is_zero() {
                            continue;
                        }
                        for b1 in 0..g.target.rank(j) {
                            let y = g.mats[j].get(b1, b);
                            if y.is_zero() {
                                continue;
                            }
                            let row = tgt_layout.gen_index(i, j, a1, b1);
                            let v = crt_ring(p, q, x, y);
                            let cur = fm.get(row, col).add(&v);
                            fm.set(row, col, cur);
                        }
                    }
                }
            }
        }
        mats.push(fm);
    }
    ChainMap::new(Arc::clone(source), Arc::clone(target), mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn periodic_w2() {
        let w = periodic_resolution(2, 3).unwrap();
        assert_eq!(w.rank(1), 1);
        // d = (t-1, 1+t, t-1)
        assert_eq!(w.diff(1).get(0, 0), &CyclicRingElement::gen_minus_one(2));
        assert_eq!(w.diff(2).get(0, 0), &CyclicRingElement::norm(2));
        assert_eq!(w.diff(3).get(0, 0), &CyclicRingElement::gen_minus_one(2));
        assert!(w.verify_dd());
        w.verify_contraction().unwrap();
    }

    #[test]
    fn homotopy_identity_w3() {
        let w = periodic_resolution(3, 6).unwrap();
        w.verify_contraction().unwrap();
    }

    #[test]
    fn lens_2_3_truncation() {
        let l = lens_complex(2, 3).unwrap();
        assert_eq!(l.top(), 3);
        assert_eq!((0..=3).map(|n| l.rank(n)).sum::<usize>(), 4);
        assert!(l.contraction.is_none());
    }

    #[test]
    fn tensor_ranks_by_convolution() {
        let l2 = Arc::new(lens_complex(2, 3).unwrap());
        let l3 = Arc::new(lens_complex(3, 3).unwrap());
        let t = tensor_complex(&l2, &l3).unwrap();
        assert_eq!(t.top(), 6);
        assert_eq!(t.rank(4), 3); // bidegrees (1,3),(2,2),(3,1)
        assert!(t.verify_dd());
        assert_eq!(t.modulus(), 6);
    }

    #[test]
    fn tensor_contraction_verified() {
        let w2 = Arc::new(periodic_resolution(2, 7).unwrap());
        let w3 = Arc::new(periodic_resolution(3, 7).unwrap());
        let t = tensor_complex(&w2, &w3).unwrap();
        assert!(t.contraction.is_some());
        assert!(t.contraction_top().unwrap() >= 6);
        t.verify_contraction().unwrap();
    }

    #[test]
    fn classifying_map_commutes() {
        let l = Arc::new(lens_complex(2, 3).unwrap());
        let w = Arc::new(periodic_resolution(2, 6).unwrap());
        let u = classifying_chain_map(&l, &w).unwrap();
        assert_eq!(u.mats.len(), 4);
    }

    #[test]
    fn tensor_of_classifying_maps() {
        let l2 = Arc::new(lens_complex(2, 3).unwrap());
        let l3 = Arc::new(lens_complex(3, 3).unwrap());
        let w2 = Arc::new(periodic_resolution(2, 7).unwrap());
        let w3 = Arc::new(periodic_resolution(3, 7).unwrap());
        let u2 = classifying_chain_map(&l2, &w2).unwrap();
        let u3 = classifying_chain_map(&l3, &w3).unwrap();
        let src = Arc::new(tensor_complex(&l2, &l3).unwrap());
        let tgt = Arc::new(tensor_complex(&w2, &w3).unwrap());
        let u = tensor_chain_map(&u2, &u3, &src, &tgt).unwrap();
        assert_eq!(u.mats.len(), 7);
    }

    #[test]
    fn crt_ring_example() {
        // (t_2 - 1) (x) 1 in Z(6): t^{crt(1,0)} - t^{crt(0,0)} = t^3 - 1
        let x = CyclicRingElement::gen_minus_one(2);
        let y = CyclicRingElement::one(3);
        let z = crt_ring(2, 3, &x, &y);
        assert_eq!(z.coeff(3), &int(1));
        assert_eq!(z.coeff(0), &int(-1));
        assert!(z.coeff(1).is_zero());
    }
}
