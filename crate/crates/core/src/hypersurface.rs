//! Block-structured hypersurface models: single blocks, links and
//! extensions, S-matrix normal forms, and the block-structure enumeration.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{CrError, CrResult};
use crate::jet::{jet_from_json, Jet};
use crate::ring::coeff::{Coeff, Rat, Sqrt2Ext};
use crate::ring::matrix::Mat;
use crate::ring::poly::Poly;
use crate::ring::vars::{VarId, VarTable};

#[derive(Clone, Debug)]
pub struct BlockSpec {
    pub size: usize,
    pub sign: i8,
    pub jet: Jet,
}

/// Ids of one complex coordinate: (holo, antiholo, re, im).
pub type ComplexIds = (VarId, VarId, VarId, VarId);

/// A hypersurface model u = sum_b sign_b * P_{f_b, m_b} in coordinates
/// (w, z_{b,k}, zeta), with P as in the block defining function: the jet
/// applied to the block's first variable plus the quadric
/// sum_{j+k <= m+1} x_j x_k s^{m+1-j-k}.
#[derive(Clone, Debug)]
pub struct HSModel {
    n: usize,
    blocks: Vec<BlockSpec>,
    table: Arc<VarTable>,
    w_ids: ComplexIds,
    z_ids: Vec<Vec<ComplexIds>>,
    zeta_ids: ComplexIds,
    tau: VarId,
}

impl HSModel {
    pub fn new(blocks: Vec<BlockSpec>) -> CrResult<Self> {
        if blocks.is_empty() {
            return Err(CrError::Schema("a model needs at least one block".into()));
        }
        for b in &blocks {
            if b.size < 1 {
                return Err(CrError::Schema("block sizes must be positive".into()));
            }
            if b.sign != 1 && b.sign != -1 {
                return Err(CrError::Schema("block signs must be +1 or -1".into()));
            }
        }
        let total: usize = blocks.iter().map(|b| b.size).sum();
        let n = total + 1;
        let single = blocks.len() == 1;
        let mut builder = VarTable::builder();
        let w_ids = builder.complex("w", "u", "v");
        let mut z_ids = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            let mut ids = Vec::new();
            for k in 1..=b.size {
                let (zn, xn, yn) = if single {
                    (format!("z{k}"), format!("x{k}"), format!("y{k}"))
                } else {
                    let b1 = bi + 1;
                    (
                        format!("z{b1}_{k}"),
                        format!("x{b1}_{k}"),
                        format!("y{b1}_{k}"),
                    )
                };
                ids.push(builder.complex(&zn, &xn, &yn));
            }
            z_ids.push(ids);
        }
        let zeta_ids = builder.complex("zeta", "s", "t");
        let tau = builder.real("tau");
        Ok(HSModel {
            n,
            blocks,
            table: builder.build(),
            w_ids,
            z_ids,
            zeta_ids,
            tau,
        })
    }

    /// Single block of size n-1 with the given jet; the archetypal model
    /// when the jet is zero.
    pub fn single_block(n: usize, sign: i8, jet: Jet) -> CrResult<Self> {
        if n < 2 {
            return Err(CrError::Schema("n must be at least 2".into()));
        }
        HSModel::new(vec![BlockSpec {
            size: n - 1,
            sign,
            jet,
        }])
    }

    /// The model with f = 0 (single block, positive sign).
    pub fn model_m0(n: usize) -> CrResult<Self> {
        HSModel::single_block(n, 1, Jet::zero(4))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn is_single_block(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn w(&self) -> ComplexIds {
        self.w_ids
    }

    pub fn zeta(&self) -> ComplexIds {
        self.zeta_ids
    }

    pub fn tau(&self) -> VarId {
        self.tau
    }

    pub fn block_z(&self, block: usize, k: usize) -> ComplexIds {
        self.z_ids[block][k - 1]
    }

    /// Complex CR coordinates z_1 .. z_{n-1} flattened across blocks.
    pub fn cr_complex(&self) -> Vec<ComplexIds> {
        self.z_ids.iter().flatten().copied().collect()
    }

    /// The n real directions (x_1, ..., x_{n-1}, s) the Levi form sees.
    pub fn cr_real_vars(&self) -> Vec<VarId> {
        let mut out: Vec<VarId> = self.z_ids.iter().flatten().map(|&(_, _, x, _)| x).collect();
        out.push(self.zeta_ids.2);
        out
    }

    pub fn min_jet_order(&self) -> usize {
        self.blocks.iter().map(|b| b.jet.order()).min().unwrap_or(0)
    }

    pub fn jets_exact(&self) -> bool {
        self.blocks.iter().all(|b| b.jet.is_exact())
    }

    /// The defining polynomial Phi with jet parts expanded to their orders.
    pub fn defining_polynomial(&self) -> Poly<Rat> {
        let t = &self.table;
        let s = self.zeta_ids.2;
        let mut phi = Poly::zero(t);
        for (bi, b) in self.blocks.iter().enumerate() {
            let m = b.size;
            let mut part = Poly::zero(t);
            // quadric: ordered pairs (j,k), j,k >= 1, j+k <= m+1
            for j in 1..=m {
                for k in 1..=m {
                    if j + k > m + 1 {
                        continue;
                    }
                    let xj = self.z_ids[bi][j - 1].2;
                    let xk = self.z_ids[bi][k - 1].2;
                    let mut exps = vec![0u16; t.len()];
                    exps[xj] += 1;
                    exps[xk] += 1;
                    exps[s] += (m + 1 - j - k) as u16;
                    part = part
                        .add(&Poly::monomial(t, exps, Rat::one()))
                        .expect("same table");
                }
            }
            // jet applied to the block's first variable
            let x1 = self.z_ids[bi][0].2;
            for (k, c) in b.jet.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                part = part
                    .add(&Poly::var_pow(t, x1, k as u16).scale(c))
                    .expect("same table");
            }
            if b.sign < 0 {
                part = part.neg();
            }
            phi = phi.add(&part).expect("same table");
        }
        phi
    }

    /// The grading with weights 1 on zeta, n on w, and j on z_j (flattened
    /// across blocks); real and conjugate partners inherit the weight of
    /// their coordinate. The quadric part of the defining polynomial is
    /// homogeneous of weight n under it.
    pub fn grading_primary(&self) -> crate::ring::grading::Grading {
        self.grading_with(|j| j as i64, self.n as i64, 1)
    }

    /// The grading with weights 0 on zeta, 2 on w, and 1 on every z_j; the
    /// quadric part is homogeneous of weight 2 under it.
    pub fn grading_secondary(&self) -> crate::ring::grading::Grading {
        self.grading_with(|_| 1, 2, 0)
    }

    fn grading_with(
        &self,
        z_weight: impl Fn(usize) -> i64,
        w_weight: i64,
        zeta_weight: i64,
    ) -> crate::ring::grading::Grading {
        use crate::ring::coeff::rat_int;
        let mut weights = vec![Rat::zero(); self.table.len()];
        let assign = |weights: &mut Vec<Rat>, ids: ComplexIds, w: i64| {
            weights[ids.0] = rat_int(w);
            weights[ids.1] = rat_int(w);
            weights[ids.2] = rat_int(w);
            weights[ids.3] = rat_int(w);
        };
        assign(&mut weights, self.w_ids, w_weight);
        assign(&mut weights, self.zeta_ids, zeta_weight);
        for (j, ids) in self.cr_complex().into_iter().enumerate() {
            assign(&mut weights, ids, z_weight(j + 1));
        }
        crate::ring::grading::Grading::new(&self.table, weights)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "blocks": self.blocks.iter().map(|b| json!({
                "size": b.size,
                "sign": b.sign,
                "jet": b.jet.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> CrResult<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| CrError::Schema("model must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| CrError::Schema("model needs integer n".into()))?
            as usize;
        let blocks_v = obj
            .get("blocks")
            .and_then(|x| x.as_array())
            .ok_or_else(|| CrError::Schema("model needs a blocks array".into()))?;
        let mut blocks = Vec::new();
        for bv in blocks_v {
            let bo = bv
                .as_object()
                .ok_or_else(|| CrError::Schema("block must be an object".into()))?;
            let size = bo
                .get("size")
                .and_then(|x| x.as_u64())
                .ok_or_else(|| CrError::Schema("block needs integer size".into()))?
                as usize;
            let sign = bo
                .get("sign")
                .and_then(|x| x.as_i64())
                .ok_or_else(|| CrError::Schema("block needs sign 1 or -1".into()))?;
            if sign != 1 && sign != -1 {
                return Err(CrError::Schema("block sign must be 1 or -1".into()));
            }
            let jet = match bo.get("jet") {
                Some(jv) => jet_from_json(jv)?,
                None => Jet::zero(4),
            };
            blocks.push(BlockSpec {
                size,
                sign: sign as i8,
                jet,
            });
        }
        let total: usize = blocks.iter().map(|b| b.size).sum();
        if total + 1 != n {
            return Err(CrError::Schema(format!(
                "block sizes sum to {total}, but n = {n} requires {}",
                n - 1
            )));
        }
        HSModel::new(blocks)
    }
}

/// Link: concatenates block lists over the shared zeta coordinate. The
/// resulting dimension satisfies n = n1 + n2 - 1.
pub fn link(m1: &HSModel, m2: &HSModel) -> CrResult<HSModel> {
    let mut blocks = m1.blocks.clone();
    blocks.extend(m2.blocks.iter().cloned());
    HSModel::new(blocks)
}

/// Extension: appends a size-1 block eps*(Re z)^2 with a zero jet.
pub fn extend(m: &HSModel, eps: i8) -> CrResult<HSModel> {
    let mut blocks = m.blocks.clone();
    blocks.push(BlockSpec {
        size: 1,
        sign: eps,
        jet: Jet::zero(4),
    });
    HSModel::new(blocks)
}

/// All palindromic compositions of n-1 except the all-ones one, sorted.
/// The all-ones composition is excluded because its adjoint operator
/// vanishes identically, so it is not 2-nondegenerate.
pub fn enumerate_block_structures(n: usize) -> CrResult<Vec<Vec<usize>>> {
    if n < 3 {
        return Err(CrError::Schema("enumeration needs n >= 3".into()));
    }
    let m = n - 1;
    let mut out: Vec<Vec<usize>> = Vec::new();
    // A palindrome is determined by its first half (plus an optional middle).
    for p in 0..=m / 2 {
        for half in compositions(p) {
            if 2 * p == m {
                let mut v = half.clone();
                v.extend(half.iter().rev());
                if !half.is_empty() {
                    out.push(v);
                }
            }
            let mid = m as i64 - 2 * p as i64;
            if mid >= 1 {
                let mut v = half.clone();
                v.push(mid as usize);
                v.extend(half.iter().rev());
                out.push(v);
            }
        }
    }
    out.retain(|v| !v.iter().all(|&x| x == 1));
    out.sort();
    out.dedup();
    Ok(out)
}

fn compositions(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn is_palindrome(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

/// The symmetric coefficient matrix with anti-diagonal blocks S_l,
/// (S_l)_{j,k} = 1 iff j+k <= l+1. Requires palindromic sizes.
pub fn smatrix_normal_form(sizes: &[usize]) -> CrResult<Mat<Rat>> {
    if !is_palindrome(sizes) {
        return Err(CrError::NotPalindromic(sizes.to_vec()));
    }
    let mu = sizes.len();
    let dim: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut s = Mat::<Rat>::zero(dim, dim);
    for r in 0..mu {
        let c = mu - 1 - r;
        let l = sizes[c]; // == sizes[r] by the palindrome condition
        for j in 1..=l {
            for k in 1..=l {
                if j + k <= l + 1 {
                    s.data[offsets[r] + j - 1][offsets[c] + k - 1] = Rat::one();
                }
            }
        }
    }
    Ok(s)
}

/// F as a quadric pencil: F = sum_j (x^T Q_j x) s^(j-1) with
/// (Q_j)_{r,s} = S_{r,s} on the slice r + s = n + 1 - j.
pub fn quadric_slices(s: &Mat<Rat>, n: usize) -> Vec<Mat<Rat>> {
    let dim = n - 1;
    (1..=dim)
        .map(|j| {
            let mut q = Mat::<Rat>::zero(dim, dim);
            for r in 1..=dim {
                for c in 1..=dim {
                    if r + c == n + 1 - j {
                        q.data[r - 1][c - 1] = s.data[r - 1][c - 1].clone();
                    }
                }
            }
            q
        })
        .collect()
}

/// Block-diagonal quadric slices of the linked-and-extended composite, with
/// positive signs on the first ceil(mu/2) blocks and negative on the rest.
pub fn quadric_slices_hat(sizes: &[usize]) -> Vec<Mat<Rat>> {
    let mu = sizes.len();
    let dim: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    (1..=dim)
        .map(|j| {
            let mut q = Mat::<Rat>::zero(dim, dim);
            for (b, &m) in sizes.iter().enumerate() {
                let sign = if b < mu.div_ceil(2) {
                    Rat::one()
                } else {
                    -Rat::one()
                };
                let target = m as i64 + 2 - j as i64;
                for r in 1..=m {
                    for c in 1..=m {
                        if (r + c) as i64 == target {
                            q.data[offsets[b] + r - 1][offsets[b] + c - 1] = sign.clone();
                        }
                    }
                }
            }
            q
        })
        .collect()
}

/// The orthogonal change of basis relating the two quadric pencils, over
/// Q(sqrt 2). Even and odd block counts use different center patterns.
pub fn conjugating_matrix(sizes: &[usize]) -> CrResult<Mat<Sqrt2Ext>> {
    if !is_palindrome(sizes) {
        return Err(CrError::NotPalindromic(sizes.to_vec()));
    }
    let mu = sizes.len();
    let dim: usize = sizes.iter().sum();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let h = Sqrt2Ext::inv_sqrt2();
    let mut x = Mat::<Sqrt2Ext>::zero(dim, dim);
    let half = mu / 2;
    for r in 0..half {
        let rr = mu - 1 - r;
        for k in 0..sizes[r] {
            x.data[offsets[r] + k][offsets[r] + k] = h.clone();
            x.data[offsets[r] + k][offsets[rr] + k] = h.clone();
            x.data[offsets[rr] + k][offsets[r] + k] = h.clone();
            x.data[offsets[rr] + k][offsets[rr] + k] = h.negate();
        }
    }
    if mu % 2 == 1 {
        let c = half;
        for k in 0..sizes[c] {
            x.data[offsets[c] + k][offsets[c] + k] = Sqrt2Ext::c_one();
        }
    }
    Ok(x)
}

#[derive(Debug)]
pub struct ConjugationWitness {
    pub sizes: Vec<usize>,
    pub q: Vec<Mat<Rat>>,
    pub q_hat: Vec<Mat<Rat>>,
    pub x: Mat<Sqrt2Ext>,
}

/// Builds the quadric pencils Q_j and Q-hat_j together with the conjugating
/// X and verifies Q_j = X^T Q-hat_j X exactly for every j. A failure is an
/// implementation bug, reported as an error.
pub fn conjugation_witness(sizes: &[usize]) -> CrResult<ConjugationWitness> {
    let s = smatrix_normal_form(sizes)?;
    let n = sizes.iter().sum::<usize>() + 1;
    let q = quadric_slices(&s, n);
    let q_hat = quadric_slices_hat(sizes);
    let x = conjugating_matrix(sizes)?;
    let xt = x.transpose();
    for (j, (qj, qhj)) in q.iter().zip(&q_hat).enumerate() {
        let lift = |m: &Mat<Rat>| -> Mat<Sqrt2Ext> {
            Mat::from_rows(
                m.data
                    .iter()
                    .map(|row| row.iter().map(|e| Sqrt2Ext::rational(e.clone())).collect())
                    .collect(),
            )
        };
        let lhs = lift(qj);
        let rhs = xt.mul(&lift(qhj)).mul(&x);
        if lhs != rhs {
            return Err(CrError::ConjugationIdentity(j + 1));
        }
    }
    Ok(ConjugationWitness {
        sizes: sizes.to_vec(),
        q,
        q_hat,
        x,
    })
}

/// The model a block structure denotes: sizes with zero jets, positive signs
/// on the first ceil(mu/2) blocks.
pub fn structure_model(sizes: &[usize]) -> CrResult<HSModel> {
    let mu = sizes.len();
    let blocks = sizes
        .iter()
        .enumerate()
        .map(|(b, &size)| BlockSpec {
            size,
            sign: if b < mu.div_ceil(2) { 1 } else { -1 },
            jet: Jet::zero(4),
        })
        .collect();
    HSModel::new(blocks)
}
