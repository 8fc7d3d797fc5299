//! Finitely generated abelian groups presented as Z^n modulo the column
//! span of an integer relation matrix, with exact coordinate maps in and
//! out of invariant-factor form. These presentations carry every
//! (co)homology group the engine produces.

use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix};
use crate::snf::{kernel_basis, solve, solve_multi, Reducer, ReducerOptions};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// Z^{ambient_rank} / column-span(relations).
///
/// `invariant_factors` lists the nonunit torsion factors in divisibility
/// order followed by one 0 per free summand. An optional `embedding`
/// identifies ambient coordinates with a sublattice of an enclosing
/// module (the cycle lattice of a subquotient), so vectors of the
/// enclosing module can be converted to class coordinates and back.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub ambient_rank: usize,
    pub relations: IntMatrix,
    pub invariant_factors: Vec<Int>,
    diag: Vec<Int>,
    rank: usize,
    /// S = row_transform * relations * C; class coordinates are read off
    /// row_transform * x.
    row_transform: IntMatrix,
    row_transform_inv: IntMatrix,
    pub embedding: Option<IntMatrix>,
}

/// Order of an element in a presented group; infinite order is a
/// distinguished value, never conflated with any finite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(Int),
    Infinite,
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "infinite"),
        }
    }
}

impl AbelianPresentation {
    pub fn from_relations(
        ambient_rank: usize,
        relations: IntMatrix,
        embedding: Option<IntMatrix>,
    ) -> Self {
        assert_eq!(relations.rows(), ambient_rank, "relation rows != ambient");
        if let Some(e) = &embedding {
            assert_eq!(e.cols(), ambient_rank, "embedding cols != ambient");
        }
        let mut red = Reducer::new(
            relations.clone(),
            ReducerOptions {
                track_r: true,
                track_r_inv: true,
                ..Default::default()
            },
            None,
        );
        red.run();
        let rank = red.rank;
        let mut diag = red.diagonal();
        diag.resize(ambient_rank, Int::zero());
        let mut invariant_factors: Vec<Int> = diag
            .iter()
            .take(rank)
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        for _ in rank..ambient_rank {
            invariant_factors.push(Int::zero());
        }
        AbelianPresentation {
            ambient_rank,
            relations,
            invariant_factors,
            diag,
            rank,
            row_transform: red.r.take().unwrap(),
            row_transform_inv: red.r_inv.take().unwrap(),
            embedding,
        }
    }

    /// The free group Z^n (no relations).
    pub fn free(n: usize, embedding: Option<IntMatrix>) -> Self {
        Self::from_relations(n, IntMatrix::zeros(n, 0), embedding)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Z-rank of the free part.
    pub fn free_rank(&self) -> usize {
        self.ambient_rank - self.rank
    }

    /// Order of the group: None when infinite.
    pub fn group_order(&self) -> Option<Int> {
        if self.free_rank() > 0 {
            return None;
        }
        let mut o = Int::one();
        for d in &self.invariant_factors {
            o *= d;
        }
        Some(o)
    }

    /// Converts a vector (in enclosing coordinates when an embedding is
    /// present, ambient coordinates otherwise) to canonical coordinates,
    /// one per invariant factor: torsion coordinates reduced to
    /// 0..d, free coordinates unreduced.
    pub fn class_coords(&self, v: &[Int]) -> Result<Vec<Int>> {
        let ambient = self.to_ambient(v)?;
        let w = self.row_transform.mul_vec(&ambient);
        let mut coords = Vec::with_capacity(self.invariant_factors.len());
        for i in 0..self.rank {
            let d = &self.diag[i];
            if d.is_one() {
                continue;
            }
            coords.push(w[i].mod_floor(d));
        }
        for i in self.rank..self.ambient_rank {
            coords.push(w[i].clone());
        }
        Ok(coords)
    }

    /// An ambient (or enclosing, when embedded) representative of the class
    /// with the given canonical coordinates.
    pub fn representative(&self, coords: &[Int]) -> Result<Vec<Int>> {
        if coords.len() != self.invariant_factors.len() {
            return Err(Error::input("coordinate length mismatch"));
        }
        let mut w = vec![Int::zero(); self.ambient_rank];
        let mut it = coords.iter();
        for i in 0..self.rank {
            if self.diag[i].is_one() {
                continue;
            }
            w[i] = it.next().unwrap().clone();
        }
        for i in self.rank..self.ambient_rank {
            w[i] = it.next().unwrap().clone();
        }
        let ambient = self.row_transform_inv.mul_vec(&w);
        Ok(match &self.embedding {
            Some(e) => e.mul_vec(&ambient),
            None => ambient,
        })
    }

    fn to_ambient(&self, v: &[Int]) -> Result<Vec<Int>> {
        match &self.embedding {
            Some(e) => {
                if v.len() != e.rows() {
                    return Err(Error::input("vector length mismatch (enclosing)"));
                }
                solve(e, v).ok_or_else(|| {
                    Error::input("vector does not lie in the cycle lattice of the presentation")
                })
            }
            None => {
                if v.len() != self.ambient_rank {
                    return Err(Error::input("vector length mismatch (ambient)"));
                }
                Ok(v.to_vec())
            }
        }
    }

    pub fn is_zero_class(&self, v: &[Int]) -> Result<bool> {
        Ok(self.class_coords(v)?.iter().all(|c| c.is_zero()))
    }

    /// Least n >= 1 with n*x in the relation span; Infinite when the image
    /// of x in the free part is nonzero.
    pub fn element_order(&self, v: &[Int]) -> Result<ElementOrder> {
        let ambient = self.to_ambient(v)?;
        let w = self.row_transform.mul_vec(&ambient);
        for i in self.rank..self.ambient_rank {
            if !w[i].is_zero() {
                return Ok(ElementOrder::Infinite);
            }
        }
        let mut n = Int::one();
        for i in 0..self.rank {
            let d = &self.diag[i];
            let g = w[i].gcd(d);
            let ord = d / &g;
            n = n.lcm(&ord);
        }
        Ok(ElementOrder::Finite(n))
    }

    /// Witness y with q*y = x in the group, when one exists. Verified by an
    /// exact solve: q*y - x must lie in the relation span.
    pub fn divisibility_witness(&self, v: &[Int], q: &Int) -> Result<Option<Vec<Int>>> {
        let ambient = self.to_ambient(v)?;
        // Solve [q*I | relations] (y; z)^T = x over Z.
        let qi = IntMatrix::identity(self.ambient_rank).scale(q);
        let aug = qi.hcat(&self.relations);
        let Some(sol) = solve(&aug, &ambient) else {
            return Ok(None);
        };
        let y_ambient: Vec<Int> = sol[..self.ambient_rank].to_vec();
        Ok(Some(match &self.embedding {
            Some(e) => e.mul_vec(&y_ambient),
            None => y_ambient,
        }))
    }

    /// Human-readable structure, e.g. "Z_2 + Z_4 + Z^2" or "0".
    pub fn structure(&self) -> String {
        let mut parts = Vec::new();
        let mut free = 0usize;
        for d in &self.invariant_factors {
            if d.is_zero() {
                free += 1;
            } else {
                parts.push(format!("Z_{d}"));
            }
        }
        match free {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Presentation of ker(d_out)/im(d_in), with coordinate maps through the
/// saturated cycle basis. Requires d_out * d_in = 0.
pub fn subquotient(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianPresentation> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::input("subquotient: chain dimensions do not match"));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::input("subquotient: composite d_out * d_in is nonzero"));
    }
    let cycles = kernel_basis(d_out);
    // Every column of d_in lies in the saturated cycle lattice.
    let rel = solve_multi(&cycles, d_in)
        .ok_or_else(|| Error::internal("image does not lie in the kernel lattice"))?;
    Ok(AbelianPresentation::from_relations(
        cycles.cols(),
        rel,
        Some(cycles),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{int, vec_int};

    #[test]
    fn subquotient_z() {
        // d_in = 0, d_out = 0, ambient rank 1 -> Z
        let g = subquotient(&IntMatrix::zeros(1, 0), &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(g.invariant_factors, vec_int(&[0]));
        assert_eq!(g.structure(), "Z");
    }

    #[test]
    fn subquotient_zp() {
        let p = IntMatrix::from_rows(vec![vec![5]]);
        let g = subquotient(&p, &IntMatrix::zeros(0, 1)).unwrap();
        assert_eq!(g.invariant_factors, vec_int(&[5]));
    }

    #[test]
    fn subquotient_z2_z3() {
        let d = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let g = subquotient(&d, &IntMatrix::zeros(0, 2)).unwrap();
        // SNF of diag(2,3) = diag(1,6)
        assert_eq!(g.invariant_factors, vec_int(&[6]));
        assert_eq!(g.structure(), "Z_6");
    }

    #[test]
    fn subquotient_rejects_noncomposable() {
        let d_in = IntMatrix::from_rows(vec![vec![1], vec![0]]);
        let d_out = IntMatrix::from_rows(vec![vec![1, 0]]);
        assert!(subquotient(&d_in, &d_out).is_err());
    }

    #[test]
    fn order_examples() {
        let p = IntMatrix::from_rows(vec![vec![7]]);
        let g = AbelianPresentation::from_relations(1, p, None);
        assert_eq!(
            g.element_order(&vec_int(&[0])).unwrap(),
            ElementOrder::Finite(int(1))
        );
        assert_eq!(
            g.element_order(&vec_int(&[1])).unwrap(),
            ElementOrder::Finite(int(7))
        );
        // Z + Z_2, element (1,0) has infinite order
        let rel = IntMatrix::from_rows(vec![vec![0], vec![2]]);
        let g2 = AbelianPresentation::from_relations(2, rel, None);
        assert_eq!(
            g2.element_order(&vec_int(&[1, 0])).unwrap(),
            ElementOrder::Infinite
        );
        assert_eq!(
            g2.element_order(&vec_int(&[0, 1])).unwrap(),
            ElementOrder::Finite(int(2))
        );
    }

    #[test]
    fn divisibility_examples() {
        // Z_3: generator is 2-divisible (2*2 = 4 = 1 mod 3)
        let g3 = AbelianPresentation::from_relations(
            1,
            IntMatrix::from_rows(vec![vec![3]]),
            None,
        );
        let w = g3
            .divisibility_witness(&vec_int(&[1]), &int(2))
            .unwrap()
            .expect("witness in Z_3");
        // verify 2*w - 1 is divisible by 3
        let lhs: Int = &w[0] * int(2) - int(1);
        assert!(lhs.mod_floor(&int(3)).is_zero());
        // Z_4: generator is not 2-divisible
        let g4 = AbelianPresentation::from_relations(
            1,
            IntMatrix::from_rows(vec![vec![4]]),
            None,
        );
        assert!(g4
            .divisibility_witness(&vec_int(&[1]), &int(2))
            .unwrap()
            .is_none());
        // zero is divisible by anything
        assert!(g4
            .divisibility_witness(&vec_int(&[0]), &int(2))
            .unwrap()
            .is_some());
    }

    #[test]
    fn coords_roundtrip() {
        let rel = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3], vec![0, 0]]);
        let g = AbelianPresentation::from_relations(3, rel, None);
        // group = Z_2 + Z_3 + Z = Z_6 + Z
        let v = vec_int(&[1, 2, -4]);
        let c = g.class_coords(&v).unwrap();
        let r = g.representative(&c).unwrap();
        let c2 = g.class_coords(&r).unwrap();
        assert_eq!(c, c2);
        // difference of v and r lies in the relation span
        let diff = crate::matrix::vec_sub(&v, &r);
        assert!(solve(&g.relations, &diff).is_some());
    }
}
