//! Structure tables of families of fields: closure under the bracket,
//! structure constants, Jacobi residuals, adjoint matrices, and the
//! bi-degrees under the two dilations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{CrError, CrResult};
use crate::hypersurface::HSModel;
use crate::ring::coeff::{rat_to_string, Coeff, GaussRat, Rat};
use crate::ring::matrix::Mat;
use crate::ring::poly::Exps;

use super::field::{catalog_field, holo_coords, lie_bracket, CatalogName, HoloField};

/// Whether linear combinations are taken with real or complex coefficients.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpanKind {
    Real,
    Complex,
}

#[derive(Debug)]
pub struct BracketTable {
    pub labels: Vec<String>,
    pub span: SpanKind,
    pub dim: usize,
    pub closed: bool,
    /// `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`; empty when open.
    pub constants: Vec<Vec<Vec<GaussRat>>>,
    pub jacobi_ok: Option<bool>,
    /// First bracket that failed to lie in the span.
    pub failure: Option<(usize, usize)>,
}

/// Coordinates of a field over the monomial support of a family, one row
/// per (component, monomial); complex entries.
fn coordinate_rows(fields: &[&HoloField]) -> (Vec<(usize, Exps)>, Vec<Vec<GaussRat>>) {
    let mut keys: BTreeMap<(usize, Exps), usize> = BTreeMap::new();
    for f in fields {
        for (ci, comp) in f.comps().iter().enumerate() {
            for (exps, _) in comp.terms() {
                let key = (ci, exps.clone());
                let next = keys.len();
                keys.entry(key).or_insert(next);
            }
        }
    }
    let ordered: Vec<(usize, Exps)> = {
        let mut v: Vec<_> = keys.iter().map(|(k, &i)| (k.clone(), i)).collect();
        v.sort_by_key(|(_, i)| *i);
        v.into_iter().map(|(k, _)| k).collect()
    };
    let cols = fields
        .iter()
        .map(|f| {
            ordered
                .iter()
                .map(|(ci, exps)| f.comps()[*ci].coeff(exps))
                .collect()
        })
        .collect();
    (ordered, cols)
}

/// Solves target = sum_k c_k fields_k in the given span; exact Gaussian
/// elimination. Returns None when the target is outside the span.
pub fn express_in_span(
    fields: &[&HoloField],
    target: &HoloField,
    span: SpanKind,
) -> Option<Vec<GaussRat>> {
    let mut all: Vec<&HoloField> = fields.to_vec();
    all.push(target);
    let (_, cols) = coordinate_rows(&all);
    let k = fields.len();
    let rows = cols[0].len();
    match span {
        SpanKind::Complex => {
            let mut aug: Vec<Vec<GaussRat>> = (0..rows)
                .map(|r| (0..=k).map(|c| cols[c][r].clone()).collect())
                .collect();
            solve_gauss(&mut aug, k)
        }
        SpanKind::Real => {
            // Split every complex coordinate into two real ones.
            let mut aug: Vec<Vec<Rat>> = Vec::with_capacity(2 * rows);
            for r in 0..rows {
                aug.push((0..=k).map(|c| cols[c][r].re.clone()).collect());
                aug.push((0..=k).map(|c| cols[c][r].im.clone()).collect());
            }
            solve_gauss(&mut aug, k).map(|sol| sol.into_iter().map(GaussRat::real).collect())
        }
    }
}

/// Gaussian elimination on an augmented system with `k` unknowns; the last
/// column is the right-hand side. Requires the solution to be unique when
/// it exists (columns independent), which `structure_table` checks first.
fn solve_gauss<F: Coeff>(aug: &mut [Vec<F>], k: usize) -> Option<Vec<F>> {
    let rows = aug.len();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r0 = 0;
    for col in 0..k {
        let Some(p) = (r0..rows).find(|&r| !aug[r][col].c_is_zero()) else {
            continue;
        };
        aug.swap(r0, p);
        let inv = aug[r0][col].inv().expect("field");
        for c in col..=k {
            aug[r0][c] = aug[r0][c].times(&inv);
        }
        for r in 0..rows {
            if r != r0 && !aug[r][col].c_is_zero() {
                let f = aug[r][col].clone();
                for c in col..=k {
                    let s = f.times(&aug[r0][c]);
                    aug[r][c] = aug[r][c].minus(&s);
                }
            }
        }
        pivot_rows.push(col);
        r0 += 1;
    }
    // inconsistent rows?
    for r in r0..rows {
        if !aug[r][k].c_is_zero() {
            return None;
        }
    }
    // read off the (unique) solution; non-pivot columns get zero
    let mut sol = vec![F::c_zero(); k];
    for (row, &col) in pivot_rows.iter().enumerate() {
        sol[col] = aug[row][k].clone();
    }
    Some(sol)
}

/// Real or complex dimension of the span of the fields.
pub fn span_rank(fields: &[&HoloField], span: SpanKind) -> usize {
    let (_, cols) = coordinate_rows(fields);
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    match span {
        SpanKind::Complex => {
            let data: Vec<Vec<GaussRat>> = (0..rows)
                .map(|r| cols.iter().map(|c| c[r].clone()).collect())
                .collect();
            Mat::from_rows(data).rank()
        }
        SpanKind::Real => {
            let mut data: Vec<Vec<Rat>> = Vec::with_capacity(2 * rows);
            for r in 0..rows {
                data.push(cols.iter().map(|c| c[r].re.clone()).collect());
                data.push(cols.iter().map(|c| c[r].im.clone()).collect());
            }
            Mat::from_rows(data).rank()
        }
    }
}

/// Structure constants of a family of independent fields. Closure fails
/// softly: the offending bracket is recorded and `closed` is false.
pub fn structure_table(
    m: &HSModel,
    fields: &[(String, HoloField)],
    span: SpanKind,
) -> CrResult<BracketTable> {
    let refs: Vec<&HoloField> = fields.iter().map(|(_, f)| f).collect();
    let k = refs.len();
    if span_rank(&refs, span) != k {
        return Err(CrError::InvalidParam(
            "fields are linearly dependent over the requested span".into(),
        ));
    }
    let mut constants = vec![vec![vec![GaussRat::c_zero(); k]; k]; k];
    let mut closed = true;
    let mut failure = None;
    for i in 0..k {
        for j in i + 1..k {
            let b = lie_bracket(m, refs[i], refs[j])?;
            match express_in_span(&refs, &b, span) {
                Some(coords) => {
                    for (idx, c) in coords.iter().enumerate() {
                        constants[i][j][idx] = c.clone();
                        constants[j][i][idx] = c.negate();
                    }
                }
                None => {
                    closed = false;
                    if failure.is_none() {
                        failure = Some((i, j));
                    }
                }
            }
        }
    }
    let jacobi_ok = if closed {
        Some(jacobi_residuals_vanish(&constants))
    } else {
        None
    };
    Ok(BracketTable {
        labels: fields.iter().map(|(n, _)| n.clone()).collect(),
        span,
        dim: k,
        closed,
        constants: if closed { constants } else { Vec::new() },
        jacobi_ok,
        failure,
    })
}

/// [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] = 0 for all triples.
/// Structure constants are sparse, so zero summands are skipped.
fn jacobi_residuals_vanish(c: &[Vec<Vec<GaussRat>>]) -> bool {
    let k = c.len();
    let mut acc = vec![GaussRat::c_zero(); k];
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for slot in acc.iter_mut() {
                    *slot = GaussRat::c_zero();
                }
                for (a, b, e) in [(i, j, l), (j, l, i), (l, i, j)] {
                    for mid in 0..k {
                        if c[a][b][mid].c_is_zero() {
                            continue;
                        }
                        for (t, slot) in acc.iter_mut().enumerate() {
                            if !c[mid][e][t].c_is_zero() {
                                *slot = slot.plus(&c[a][b][mid].times(&c[mid][e][t]));
                            }
                        }
                    }
                }
                if acc.iter().any(|x| !x.c_is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

impl BracketTable {
    pub fn to_json(&self) -> serde_json::Value {
        let gauss_str = |g: &GaussRat| -> serde_json::Value {
            if g.is_real() {
                serde_json::Value::String(rat_to_string(&g.re))
            } else {
                serde_json::json!({"re": rat_to_string(&g.re), "im": rat_to_string(&g.im)})
            }
        };
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.constants.is_empty() {
                    continue;
                }
                let coords: Vec<serde_json::Value> = self.constants[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.c_is_zero())
                    .map(|(k, c)| serde_json::json!({"basis": self.labels[k], "coeff": gauss_str(c)}))
                    .collect();
                if !coords.is_empty() {
                    brackets.push(serde_json::json!({
                        "lhs": self.labels[i],
                        "rhs": self.labels[j],
                        "value": coords,
                    }));
                }
            }
        }
        serde_json::json!({
            "labels": self.labels,
            "span": match self.span { SpanKind::Real => "real", SpanKind::Complex => "complex" },
            "dim": self.dim,
            "closed": self.closed,
            "jacobi_ok": self.jacobi_ok,
            "failure": self.failure.map(|(i, j)| serde_json::json!([self.labels[i].clone(), self.labels[j].clone()])),
            "brackets": brackets,
        })
    }

    /// LaTeX tabular of the nonzero brackets.
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        out.push_str("\\begin{tabular}{lll}\n");
        out.push_str("bracket & value \\\\\n\\hline\n");
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.constants.is_empty() {
                    continue;
                }
                let terms: Vec<String> = self.constants[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.c_is_zero())
                    .map(|(k, c)| format!("{}\\,{}", c, self.labels[k]))
                    .collect();
                if !terms.is_empty() {
                    out.push_str(&format!(
                        "$[{}, {}]$ & ${}$ \\\\\n",
                        self.labels[i],
                        self.labels[j],
                        terms.join(" + ")
                    ));
                }
            }
        }
        out.push_str("\\end{tabular}\n");
        out
    }
}

/// Matrix of ad(op) on the given basis, column convention:
/// [op, basis_k] = sum_j M_{j,k} basis_j. Complex span.
pub fn ad_matrix_on(
    m: &HSModel,
    op: &HoloField,
    basis: &[(String, HoloField)],
) -> CrResult<Mat<GaussRat>> {
    let refs: Vec<&HoloField> = basis.iter().map(|(_, f)| f).collect();
    let k = refs.len();
    let mut out = Mat::<GaussRat>::zero(k, k);
    for (col, b) in refs.iter().enumerate() {
        let br = lie_bracket(m, op, b)?;
        let coords = express_in_span(&refs, &br, SpanKind::Complex).ok_or_else(|| {
            CrError::InvalidParam(format!("ad image leaves the span at column {col}"))
        })?;
        for (row, c) in coords.into_iter().enumerate() {
            out.data[row][col] = c;
        }
    }
    Ok(out)
}

/// Bi-degree (j, k) with [U_0, X] = j X and [V_0, X] = k X; errors with the
/// list of observed bi-degrees when X is not a simultaneous eigenvector.
pub fn grading_weights(m: &HSModel, x: &HoloField) -> CrResult<(Rat, Rat)> {
    let u0 = catalog_field(m, &CatalogName::U0)?;
    let v0 = catalog_field(m, &CatalogName::V0)?;
    let ju = eigenvalue_of(m, &u0, x)?;
    let jv = eigenvalue_of(m, &v0, x)?;
    match (ju, jv) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(CrError::NotEigenvector(bidegree_decomposition(m, x))),
    }
}

fn eigenvalue_of(m: &HSModel, op: &HoloField, x: &HoloField) -> CrResult<Option<Rat>> {
    let b = lie_bracket(m, op, x)?;
    if x.is_zero() {
        return Ok(None);
    }
    // candidate from the first nonzero coordinate
    let mut lambda: Option<GaussRat> = None;
    'outer: for (ci, comp) in x.comps().iter().enumerate() {
        for (exps, c) in comp.terms() {
            let bc = b.comps()[ci].coeff(exps);
            let inv = c.inv().expect("nonzero term");
            lambda = Some(bc.times(&inv));
            break 'outer;
        }
    }
    let lambda = lambda.expect("nonzero field");
    if !lambda.im.is_zero() {
        return Ok(None);
    }
    if b == x.scale(&lambda) {
        Ok(Some(lambda.re))
    } else {
        Ok(None)
    }
}

/// Observed bi-degrees (weight under each dilation) of the terms of X.
fn bidegree_decomposition(m: &HSModel, x: &HoloField) -> Vec<(String, String)> {
    let n = m.n() as i64;
    let coords = holo_coords(m);
    // weights of the coordinates under the two gradings
    let weight = |v: usize, primary: bool| -> i64 {
        let idx = coords.iter().position(|&c| c == v).expect("coordinate");
        if primary {
            if idx == 0 {
                n
            } else if idx == coords.len() - 1 {
                1
            } else {
                idx as i64
            }
        } else if idx == 0 {
            2
        } else if idx == coords.len() - 1 {
            0
        } else {
            1
        }
    };
    let mut seen = std::collections::BTreeSet::new();
    for (ci, comp) in x.comps().iter().enumerate() {
        let coord_var = coords[ci];
        for (exps, _) in comp.terms() {
            let mut wu = -weight(coord_var, true);
            let mut wv = -weight(coord_var, false);
            for (v, &e) in exps.iter().enumerate() {
                if e > 0 {
                    wu += weight(v, true) * e as i64;
                    wv += weight(v, false) * e as i64;
                }
            }
            seen.insert((wu, wv));
        }
    }
    seen.into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}
