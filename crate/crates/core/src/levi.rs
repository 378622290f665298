//! Levi form, Levi-kernel field, Levi-kernel adjoint operator,
//! 2-nondegeneracy certification, and Jordan-type detection.
//!
//! Rank conditions are certified symbolically: the kernel has rank exactly 1
//! because a distinguished (n-1)x(n-1) minor of the Levi form is a nonzero
//! constant, and the adjoint operator is nonvanishing because it has a
//! constant nonzero entry. Point sampling is a secondary diagnostic only.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{CrError, CrResult};
use crate::hypersurface::HSModel;
use crate::ring::coeff::{rat_to_string, Rat};
use crate::ring::matrix::{Mat, PolyMat};
use crate::ring::poly::Poly;

/// The (H, v, A) triple of a model. H is symmetric, H v = 0 exactly, and
/// with v normalized so its zeta entry is -1, A_{j,k} = dv_j/dx_k.
pub struct LeviData {
    pub h: PolyMat<Rat>,
    pub v: Vec<Poly<Rat>>,
    pub a: PolyMat<Rat>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanType {
    /// Multiset of Jordan block sizes, descending; sums to the matrix size.
    pub partition: Vec<usize>,
}

/// Matrix of second partials of Phi in the n real CR directions.
pub fn levi_form(m: &HSModel) -> PolyMat<Rat> {
    let phi = m.defining_polynomial();
    let vars = m.cr_real_vars();
    let n = vars.len();
    let mut h = PolyMat::poly_zero(m.table(), n, n);
    let firsts: Vec<Poly<Rat>> = vars
        .iter()
        .map(|&v| phi.differentiate(v).expect("model variable"))
        .collect();
    for j in 0..n {
        for k in 0..n {
            h.data[j][k] = firsts[j].differentiate(vars[k]).expect("model variable");
        }
    }
    h
}

/// Kernel field in closed form: per block of size m the entries are
/// v_k = sum_{j<k} x_j s^{k-1-j}, and the zeta entry is -1. The result is
/// verified against H v = 0 exactly; on failure the exact fraction-field
/// fallback runs.
pub fn kernel_field(m: &HSModel) -> CrResult<Vec<Poly<Rat>>> {
    let t = m.table();
    let s = m.zeta().2;
    let mut v: Vec<Poly<Rat>> = Vec::new();
    for (bi, b) in m.blocks().iter().enumerate() {
        for k in 1..=b.size {
            let mut entry = Poly::zero(t);
            for j in 1..k {
                let xj = m.block_z(bi, j).2;
                let mut exps = vec![0u16; t.len()];
                exps[xj] = 1;
                exps[s] = (k - 1 - j) as u16;
                entry = entry.add(&Poly::monomial(t, exps, Rat::one()))?;
            }
            v.push(entry);
        }
    }
    v.push(Poly::constant(t, -Rat::one()));
    let h = levi_form(m);
    let hv = h.mat_vec(&v)?;
    if hv.iter().all(|p| p.is_zero()) {
        return Ok(v);
    }
    polynomial_nullspace(&h, m)
}

/// Exact nullspace of a rank-(n-1) polynomial matrix via (n-1)-minors:
/// drop a row, take signed maximal minors as kernel entries, then scale so
/// the last entry is -1 (requires the last entry to divide the others).
pub fn polynomial_nullspace(h: &PolyMat<Rat>, m: &HSModel) -> CrResult<Vec<Poly<Rat>>> {
    let t = m.table();
    let n = h.rows;
    for drop in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| r != drop).collect();
        let mut v: Vec<Poly<Rat>> = Vec::with_capacity(n);
        for j in 0..n {
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = h.submatrix(&rows, &cols).det_bareiss(t)?;
            v.push(if j % 2 == 0 { minor } else { minor.neg() });
        }
        if v.iter().all(|p| p.is_zero()) {
            continue;
        }
        let hv = h.mat_vec(&v)?;
        if !hv.iter().all(|p| p.is_zero()) {
            return Err(CrError::KernelRank(
                "matrix has full rank; no symbolic kernel".into(),
            ));
        }
        let last = v[n - 1].clone();
        if last.is_zero() {
            return Err(CrError::KernelRank(
                "kernel vector is not transversal to the zeta direction".into(),
            ));
        }
        let scale = last.neg();
        let mut out = Vec::with_capacity(n);
        for p in v {
            out.push(p.div_exact(&scale).map_err(|_| {
                CrError::KernelRank("kernel entries are not polynomial after normalization".into())
            })?);
        }
        return Ok(out);
    }
    Err(CrError::KernelRank(
        "all maximal minors vanish; kernel rank exceeds 1".into(),
    ))
}

/// A_{j,k} = dv_j/dx_k on the first n-1 indices.
pub fn adjoint_operator(m: &HSModel) -> CrResult<PolyMat<Rat>> {
    let v = kernel_field(m)?;
    adjoint_from_kernel(m, &v)
}

pub fn adjoint_from_kernel(m: &HSModel, v: &[Poly<Rat>]) -> CrResult<PolyMat<Rat>> {
    let vars = m.cr_real_vars();
    let n = m.n();
    let mut a = PolyMat::poly_zero(m.table(), n - 1, n - 1);
    for j in 0..n - 1 {
        for k in 0..n - 1 {
            a.data[j][k] = v[j].differentiate(vars[k])?;
        }
    }
    Ok(a)
}

pub fn levi_data(m: &HSModel) -> CrResult<LeviData> {
    let h = levi_form(m);
    let v = kernel_field(m)?;
    let a = adjoint_from_kernel(m, &v)?;
    Ok(LeviData { h, v, a })
}

/// The k x k nilpotent Toeplitz matrix with ones on the first subdiagonal,
/// as a polynomial matrix.
pub fn toeplitz_t(m: &HSModel, k: usize) -> PolyMat<Rat> {
    let mut t = PolyMat::poly_zero(m.table(), k, k);
    for r in 1..k {
        t.data[r][r - 1] = Poly::one(m.table());
    }
    t
}

/// Expected adjoint operator of a block model: per block of size m the sum
/// over j of s^(j-1) T^j, assembled block-diagonally.
pub fn expected_adjoint(m: &HSModel) -> PolyMat<Rat> {
    let t = m.table();
    let s = m.zeta().2;
    let n = m.n();
    let mut a = PolyMat::poly_zero(t, n - 1, n - 1);
    let mut off = 0;
    for b in m.blocks() {
        for r in 0..b.size {
            for c in 0..b.size {
                // (T^j)_{r,s} = 1 iff r - s = j  (1-based j >= 1)
                if r > c {
                    let j = r - c;
                    a.data[off + r][off + c] = Poly::var_pow(t, s, (j - 1) as u16);
                }
            }
        }
        off += b.size;
    }
    a
}

#[derive(Debug)]
pub struct TwoNondegReport {
    pub levi_degenerate: bool,
    pub kernel_rank_1: bool,
    pub adjoint_nonvanishing: bool,
    pub minor_value: Option<Rat>,
    pub adjoint_witness: Option<(usize, usize, Rat)>,
    pub jordan_type_origin: Option<JordanType>,
    pub failing: Option<String>,
}

impl TwoNondegReport {
    pub fn passed(&self) -> bool {
        self.levi_degenerate && self.kernel_rank_1 && self.adjoint_nonvanishing
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "levi_degenerate": self.levi_degenerate,
            "kernel_rank_1": self.kernel_rank_1,
            "adjoint_nonvanishing": self.adjoint_nonvanishing,
            "jordan_type": self.jordan_type_origin.as_ref().map(|j| j.partition.clone()),
            "certificates": {
                "constant_minor": self.minor_value.as_ref().map(rat_to_string),
                "adjoint_constant_entry": self.adjoint_witness.as_ref().map(|(r, c, val)| json!({
                    "row": r, "col": c, "value": rat_to_string(val),
                })),
                "failing": self.failing,
            },
        })
    }
}

/// Certifies: (a) det H = 0 identically; (b) the upper-left (n-1)x(n-1)
/// minor is a nonzero constant (kernel rank exactly 1 everywhere); (c) the
/// adjoint operator has a constant nonzero entry (nonvanishing everywhere).
pub fn check_2nondegeneracy(m: &HSModel) -> CrResult<TwoNondegReport> {
    let t = m.table();
    let h = levi_form(m);
    let n = m.n();

    let det = h.det_bareiss(t)?;
    let levi_degenerate = det.is_zero();
    let mut failing = None;
    if !levi_degenerate {
        failing = Some(format!("det H = {det}"));
    }

    let idx: Vec<usize> = (0..n - 1).collect();
    let minor = h.submatrix(&idx, &idx).det_bareiss(t)?;
    let kernel_rank_1 = minor.is_constant() && !minor.is_zero();
    let minor_value = if kernel_rank_1 {
        Some(minor.constant_term())
    } else {
        if failing.is_none() {
            failing = Some(format!("upper-left minor = {minor}"));
        }
        None
    };

    let mut adjoint_witness = None;
    let mut jordan_type_origin = None;
    let mut adjoint_nonvanishing = false;
    if levi_degenerate && kernel_rank_1 {
        let v = kernel_field(m)?;
        let a = adjoint_from_kernel(m, &v)?;
        'outer: for r in 0..n - 1 {
            for c in 0..n - 1 {
                let e = &a.data[r][c];
                if e.is_constant() && !e.is_zero() {
                    adjoint_witness = Some((r, c, e.constant_term()));
                    adjoint_nonvanishing = true;
                    break 'outer;
                }
            }
        }
        if !adjoint_nonvanishing && failing.is_none() {
            failing = Some("adjoint operator has no constant nonzero entry".into());
        }
        if adjoint_nonvanishing {
            let origin = vec![Rat::zero(); n];
            jordan_type_origin = Some(jordan_type(&a, m, &origin)?);
        }
    }

    Ok(TwoNondegReport {
        levi_degenerate,
        kernel_rank_1,
        adjoint_nonvanishing,
        minor_value,
        adjoint_witness,
        jordan_type_origin,
        failing,
    })
}

/// Evaluates a polynomial matrix at a point given in the model's n real CR
/// coordinates (x_1, ..., x_{n-1}, s).
pub fn eval_at_point(a: &PolyMat<Rat>, m: &HSModel, point: &[Rat]) -> CrResult<Mat<Rat>> {
    let vars = m.cr_real_vars();
    if point.len() != vars.len() {
        return Err(CrError::DimensionMismatch(format!(
            "point needs {} coordinates",
            vars.len()
        )));
    }
    let mut full = vec![Rat::zero(); m.table().len()];
    for (v, val) in vars.iter().zip(point) {
        full[*v] = val.clone();
    }
    let mut out = Mat::<Rat>::zero(a.rows, a.cols);
    for r in 0..a.rows {
        for c in 0..a.cols {
            out.data[r][c] = a.data[r][c].eval(&full)?;
        }
    }
    Ok(out)
}

/// Jordan type of a nilpotent matrix at a rational point, recovered from the
/// rank sequence of its powers.
pub fn jordan_type(a: &PolyMat<Rat>, m: &HSModel, point: &[Rat]) -> CrResult<JordanType> {
    let b = eval_at_point(a, m, point)?;
    jordan_type_of_matrix(&b)
}

pub fn jordan_type_of_matrix(b: &Mat<Rat>) -> CrResult<JordanType> {
    let k = b.rows;
    let mut powers = vec![Mat::<Rat>::identity(k)];
    for i in 1..=k {
        let next = powers[i - 1].mul(b);
        powers.push(next);
    }
    if !powers[k].is_zero() {
        return Err(CrError::NotNilpotent);
    }
    let ranks: Vec<usize> = powers.iter().map(|p| p.rank()).collect();
    // blocks of size >= i: d_i = rank(B^{i-1}) - rank(B^i)
    let mut partition = Vec::new();
    for i in 1..=k {
        let d_i = ranks[i - 1] - ranks[i];
        let d_next = if i < k { ranks[i] - ranks[i + 1] } else { 0 };
        let count = d_i - d_next;
        for _ in 0..count {
            partition.push(i);
        }
    }
    partition.sort_unstable_by(|x, y| y.cmp(x));
    debug_assert_eq!(partition.iter().sum::<usize>(), k);
    Ok(JordanType { partition })
}

/// Jordan type at the origin plus a fixed-seed sample of rational points,
/// reporting whether the type is constant across the sample.
pub fn jordan_type_sampled(
    a: &PolyMat<Rat>,
    m: &HSModel,
    seed: u64,
    samples: usize,
) -> CrResult<(JordanType, bool)> {
    let n = m.n();
    let origin = vec![Rat::zero(); n];
    let at_origin = jordan_type(a, m, &origin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constant = true;
    for _ in 0..samples {
        let point: Vec<Rat> = (0..n)
            .map(|_| {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=4);
                crate::ring::coeff::rat(num, den)
            })
            .collect();
        let jt = jordan_type(a, m, &point)?;
        if jt != at_origin {
            constant = false;
        }
    }
    Ok((at_origin, constant))
}
