//! Holomorphic polynomial vector fields on C^{n+1} and the catalog of the
//! model symmetries: translations, shears, the two dilations, and the extra
//! fields attached to monomial and homogeneous perturbations.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{CrError, CrResult};
use crate::hypersurface::HSModel;
use crate::jet::FamilyTag;
use crate::ring::coeff::{rat, rat_int, Coeff, GaussRat, Rat};
use crate::ring::poly::{poly_to_json_gauss, Poly};
use crate::ring::vars::{VarId, VarKind, VarTable};

/// Coefficients of a holomorphic field: component 0 multiplies d/dw,
/// components 1..n-1 multiply d/dz_j, component n multiplies d/dzeta.
#[derive(Clone, PartialEq, Debug)]
pub struct HoloField {
    n: usize,
    table: Arc<VarTable>,
    comps: Vec<Poly<GaussRat>>,
}

impl HoloField {
    pub fn new(m: &HSModel, comps: Vec<Poly<GaussRat>>) -> CrResult<Self> {
        let n = m.n();
        if comps.len() != n + 1 {
            return Err(CrError::DimensionMismatch(format!(
                "a field on C^{} has {} components",
                n + 1,
                n + 1
            )));
        }
        for c in &comps {
            for (exps, _) in c.terms() {
                for (v, &e) in exps.iter().enumerate() {
                    if e > 0 && m.table().kind(v) != VarKind::Holo {
                        return Err(CrError::InvalidParam(format!(
                            "coefficient uses non-holomorphic variable {}",
                            m.table().name(v)
                        )));
                    }
                }
            }
        }
        Ok(HoloField {
            n,
            table: m.table().clone(),
            comps,
        })
    }

    pub fn zero(m: &HSModel) -> Self {
        HoloField {
            n: m.n(),
            table: m.table().clone(),
            comps: vec![Poly::zero(m.table()); m.n() + 1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn coeff_w(&self) -> &Poly<GaussRat> {
        &self.comps[0]
    }

    pub fn coeff_z(&self, j: usize) -> &Poly<GaussRat> {
        &self.comps[j]
    }

    pub fn coeff_zeta(&self) -> &Poly<GaussRat> {
        &self.comps[self.n]
    }

    pub fn comps(&self) -> &[Poly<GaussRat>] {
        &self.comps
    }

    /// Replaces one coefficient; the holomorphy invariant is the caller's
    /// responsibility when assembling ansatz fields.
    pub fn set_comp(&mut self, k: usize, p: Poly<GaussRat>) {
        self.comps[k] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &HoloField) -> CrResult<HoloField> {
        if self.n != o.n {
            return Err(CrError::DimensionMismatch("field dimensions differ".into()));
        }
        let comps = self
            .comps
            .iter()
            .zip(&o.comps)
            .map(|(a, b)| a.add(b))
            .collect::<CrResult<Vec<_>>>()?;
        Ok(HoloField {
            n: self.n,
            table: self.table.clone(),
            comps,
        })
    }

    pub fn scale(&self, c: &GaussRat) -> HoloField {
        HoloField {
            n: self.n,
            table: self.table.clone(),
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn sub(&self, o: &HoloField) -> CrResult<HoloField> {
        self.add(&o.scale(&GaussRat::real(-Rat::one())))
    }

    /// Largest total degree among the coefficient polynomials.
    pub fn max_coeff_degree(&self) -> usize {
        self.comps
            .iter()
            .map(|c| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self, m: &HSModel) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("d/dw".into(), poly_to_json_gauss(&self.comps[0]));
        for (k, ids) in m.cr_complex().iter().enumerate() {
            map.insert(
                format!("d/d{}", m.table().name(ids.0)),
                poly_to_json_gauss(&self.comps[k + 1]),
            );
        }
        map.insert("d/dzeta".into(), poly_to_json_gauss(&self.comps[self.n]));
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for HoloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let coord = |k: usize| -> String {
            if k == 0 {
                "w".into()
            } else if k == self.n {
                "zeta".into()
            } else {
                format!("z{k}")
            }
        };
        for (k, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({}) d/d{}", c, coord(k)));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// [X, Y]: the commutator with coefficients X(Y_c) - Y(X_c), differentiating
/// along the holomorphic coordinates only.
pub fn lie_bracket(m: &HSModel, x: &HoloField, y: &HoloField) -> CrResult<HoloField> {
    if x.n() != y.n() {
        return Err(CrError::DimensionMismatch("field dimensions differ".into()));
    }
    let coords = holo_coords(m);
    let mut comps = Vec::with_capacity(x.n() + 1);
    for c in 0..=x.n() {
        let mut acc = Poly::zero(m.table());
        for (j, &var) in coords.iter().enumerate() {
            let dy = y.comps[c].differentiate(var)?;
            let dx = x.comps[c].differentiate(var)?;
            acc = acc.add(&x.comps[j].mul(&dy)?)?;
            acc = acc.sub(&y.comps[j].mul(&dx)?)?;
        }
        comps.push(acc);
    }
    HoloField::new(m, comps)
}

/// The holomorphic coordinate variables (w, z_1, ..., z_{n-1}, zeta).
pub fn holo_coords(m: &HSModel) -> Vec<VarId> {
    let mut out = vec![m.w().0];
    out.extend(m.cr_complex().iter().map(|ids| ids.0));
    out.push(m.zeta().0);
    out
}

/// Names of the catalog fields on the single-block model in C^{n+1}.
#[derive(Clone, PartialEq, Debug)]
pub enum CatalogName {
    /// i d/dw, weight (-n, -2).
    YTop,
    /// i d/dz_j for j = 1..n-1.
    Y(usize),
    /// i d/dzeta.
    YPrime,
    /// d/dz_j - zeta d/dz_{j+1} + 2 z_{n-j} d/dw; at j = n-1 the shear term
    /// drops and the w-part is 2 z_1.
    X(usize),
    /// 2 d/dzeta + sum_{j>=2} (2j-2-n) z_{j-1} d/dz_j.
    XPrime,
    /// i z_1^2 d/dw + i z_1 d/dz_{n-1}.
    V2n,
    /// The dilation with weights (j, 1, n).
    U0,
    /// The dilation with weights (1, 0, 2).
    V0,
    /// Scaling stabilizer of the monomial a x^m.
    U0m(usize),
    /// Extra field of the homogeneous families.
    Vf(FamilyTag),
    /// Extra translation-like field of the quartic monomial a x^4.
    XHat(Rat),
    /// The exceptional field on the n = 4 model.
    C5,
}

impl CatalogName {
    pub fn label(&self, n: usize) -> String {
        match self {
            CatalogName::YTop => format!("Y_-{n}"),
            CatalogName::Y(j) => format!("Y_-{j}"),
            CatalogName::YPrime => "Y'_-1".into(),
            CatalogName::X(j) => format!("X_-{j}"),
            CatalogName::XPrime => "X'_-1".into(),
            CatalogName::V2n => format!("V_{}", 2 - (n as i64)),
            CatalogName::U0 => "U_0".into(),
            CatalogName::V0 => "V_0".into(),
            CatalogName::U0m(m) => format!("U_0^{m}"),
            CatalogName::Vf(tag) => format!("V_f[{}]", tag.name()),
            CatalogName::XHat(_) => "Xhat_-1".into(),
            CatalogName::C5 => "W_C5".into(),
        }
    }
}

fn gr(n: i64, d: i64) -> GaussRat {
    GaussRat::real(rat(n, d))
}

/// Builds the named field on a single-block model.
pub fn catalog_field(m: &HSModel, name: &CatalogName) -> CrResult<HoloField> {
    if !m.is_single_block() {
        return Err(CrError::InvalidParam(
            "catalog fields live on single-block models".into(),
        ));
    }
    let n = m.n();
    let t = m.table();
    let i = GaussRat::i();
    let zvar = |j: usize| Poly::<GaussRat>::var(t, m.block_z(0, j).0);
    let wvar = || Poly::<GaussRat>::var(t, m.w().0);
    let zetavar = || Poly::<GaussRat>::var(t, m.zeta().0);
    let mut f = HoloField::zero(m);
    match name {
        CatalogName::YTop => {
            f.comps[0] = Poly::constant(t, i);
        }
        CatalogName::Y(j) => {
            if *j < 1 || *j > n - 1 {
                return Err(CrError::InvalidParam(format!("Y index {j} out of range")));
            }
            f.comps[*j] = Poly::constant(t, i);
        }
        CatalogName::YPrime => {
            f.comps[n] = Poly::constant(t, i);
        }
        CatalogName::X(j) => {
            let j = *j;
            if !(1..=n - 1).contains(&j) {
                return Err(CrError::InvalidParam(format!("X index {j} out of range")));
            }
            f.comps[j] = Poly::one(t);
            if j <= n - 2 {
                f.comps[j + 1] = zetavar().neg();
            }
            f.comps[0] = zvar(n - j).scale(&gr(2, 1));
        }
        CatalogName::XPrime => {
            f.comps[n] = Poly::constant(t, gr(2, 1));
            for j in 2..=n - 1 {
                let c = gr(2 * j as i64 - 2 - n as i64, 1);
                f.comps[j] = zvar(j - 1).scale(&c);
            }
        }
        CatalogName::V2n => {
            f.comps[0] = zvar(1).pow(2).scale(&i);
            f.comps[n - 1] = zvar(1).scale(&i);
        }
        CatalogName::U0 => {
            for j in 1..=n - 1 {
                f.comps[j] = zvar(j).scale(&gr(j as i64, 1));
            }
            f.comps[n] = zetavar();
            f.comps[0] = wvar().scale(&gr(n as i64, 1));
        }
        CatalogName::V0 => {
            for j in 1..=n - 1 {
                f.comps[j] = zvar(j);
            }
            f.comps[0] = wvar().scale(&gr(2, 1));
        }
        CatalogName::U0m(mm) => {
            let mi = *mm as i64;
            let ni = n as i64;
            for j in 1..=n - 1 {
                // (n - m)/(n-2) + j (m-2)/(n-2)
                let c =
                    GaussRat::real(rat(ni - mi, ni - 2) + rat(mi - 2, ni - 2) * rat_int(j as i64));
                f.comps[j] = zvar(j).scale(&c);
            }
            f.comps[n] = zetavar().scale(&gr(mi - 2, ni - 2));
            f.comps[0] = wvar().scale(&gr(mi, 1));
        }
        CatalogName::XHat(a) => {
            // (2 z_{n-1} - 2a z_1^3) d/dw + d/dz_1 - zeta d/dz_2 - 3a z_1^2 d/dz_{n-1}
            let ag = GaussRat::real(a.clone());
            f.comps[0] = zvar(n - 1)
                .scale(&gr(2, 1))
                .sub(&zvar(1).pow(3).scale(&ag.times(&gr(2, 1))))?;
            f.comps[1] = Poly::one(t);
            f.comps[2] = zetavar().neg();
            let prev = f.comps[n - 1].clone();
            f.comps[n - 1] = prev.sub(&zvar(1).pow(2).scale(&ag.times(&gr(3, 1))))?;
        }
        CatalogName::C5 => {
            if n != 4 {
                return Err(CrError::InvalidParam(
                    "the exceptional field lives on the n = 4 model".into(),
                ));
            }
            // i z_1^2 d/dz_2 - 2i z_1 d/dzeta
            f.comps[2] = zvar(1).pow(2).scale(&i);
            f.comps[n] = zvar(1).scale(&GaussRat::new(Rat::zero(), rat_int(-2)));
        }
        CatalogName::Vf(tag) => {
            return vf_field(m, tag);
        }
    }
    Ok(f)
}

/// The extra field of each homogeneous family, as printed for the
/// representative function of the family.
fn vf_field(m: &HSModel, tag: &FamilyTag) -> CrResult<HoloField> {
    let n = m.n();
    let ni = n as i64;
    let t = m.table();
    let zvar = |j: usize| Poly::<GaussRat>::var(t, m.block_z(0, j).0);
    let wvar = || Poly::<GaussRat>::var(t, m.w().0);
    let zetavar = || Poly::<GaussRat>::var(t, m.zeta().0);
    let mut f = HoloField::zero(m);
    // shared skeleton: d/dz_1 - zeta d/dz_2
    f.comps[1] = Poly::one(t);
    f.comps[2] = zetavar().neg();
    match tag {
        FamilyTag::TypeI { a } => {
            // (a w + a(a-1) z_1 + 2 z_{n-1}) d/dw + ((a-2)/(n-2)) zeta d/dzeta
            //   + sum ((n-a)/(n-2) + j (a-2)/(n-2)) z_j d/dz_j
            let ag = GaussRat::real(a.clone());
            let a1 = GaussRat::real(a * (a - rat_int(1)));
            f.comps[0] = wvar()
                .scale(&ag)
                .add(&zvar(1).scale(&a1))?
                .add(&zvar(n - 1).scale(&gr(2, 1)))?;
            f.comps[n] = zetavar().scale(&GaussRat::real((a - rat_int(2)) / rat_int(ni - 2)));
            for j in 1..=n - 1 {
                let c = GaussRat::real(
                    (rat_int(ni) - a) / rat_int(ni - 2)
                        + (a - rat_int(2)) / rat_int(ni - 2) * rat_int(j as i64),
                );
                f.comps[j] = f.comps[j].add(&zvar(j).scale(&c))?;
            }
        }
        FamilyTag::TypeII => {
            f.comps[0] = wvar().add(&zvar(1))?.add(&zvar(n - 1).scale(&gr(2, 1)))?;
            f.comps[n] = zetavar().scale(&gr(1, ni - 2));
            for j in 1..=n - 1 {
                f.comps[j] = f.comps[j].add(&zvar(j).scale(&gr(j as i64 - 1, ni - 2)))?;
            }
        }
        FamilyTag::TypeIII => {
            f.comps[0] = zvar(n - 1).scale(&gr(2, 1)).sub(&zvar(1))?;
            f.comps[n] = zetavar().scale(&gr(-2, ni - 2));
            for j in 1..=n - 1 {
                f.comps[j] = f.comps[j].add(&zvar(j).scale(&gr(ni - 2 * j as i64, ni - 2)))?;
            }
        }
        FamilyTag::TypeIV => {
            f.comps[0] = wvar().add(&zvar(1))?.add(&zvar(n - 1).scale(&gr(2, 1)))?;
            f.comps[n] = zetavar().scale(&gr(-1, ni - 2));
            for j in 1..=n - 1 {
                f.comps[j] = f.comps[j].add(&zvar(j).scale(&gr(ni - j as i64 - 1, ni - 2)))?;
            }
        }
        FamilyTag::TypeV => {
            f.comps[0] = wvar()
                .scale(&gr(2, 1))
                .add(&zvar(1).scale(&gr(4, 1)))?
                .add(&zvar(n - 1).scale(&gr(2, 1)))?;
            // (z_{n-1} - z_1) d/dz_{n-1} + sum_{j<=n-2} z_j d/dz_j
            for j in 1..=n - 2 {
                f.comps[j] = f.comps[j].add(&zvar(j))?;
            }
            f.comps[n - 1] = f.comps[n - 1].add(&zvar(n - 1))?.sub(&zvar(1))?;
        }
        FamilyTag::TypeVI => {
            // (3w + 18 z_1 - 3 z_1^3 + 2 z_{n-1}) d/dw
            //   - (9 z_1 + (9/2) z_1^2) d/dz_{n-1}
            //   + (1/(n-2)) zeta d/dzeta + sum ((n-3+j)/(n-2)) z_j d/dz_j
            // The quadratic and cubic corrections are the t = -3/2 instance
            // of the cubic ansatz t (3 z_1^2 d/dz_{n-1} + 2 z_1^3 d/dw).
            f.comps[0] = wvar()
                .scale(&gr(3, 1))
                .add(&zvar(1).scale(&gr(18, 1)))?
                .sub(&zvar(1).pow(3).scale(&gr(3, 1)))?
                .add(&zvar(n - 1).scale(&gr(2, 1)))?;
            f.comps[n] = zetavar().scale(&gr(1, ni - 2));
            for j in 1..=n - 1 {
                f.comps[j] = f.comps[j].add(&zvar(j).scale(&gr(ni - 3 + j as i64, ni - 2)))?;
            }
            f.comps[n - 1] = f.comps[n - 1]
                .sub(&zvar(1).scale(&gr(9, 1)))?
                .sub(&zvar(1).pow(2).scale(&gr(9, 2)))?;
        }
        other => {
            return Err(CrError::InvalidParam(format!(
                "no extra field for family {}",
                other.name()
            )));
        }
    }
    Ok(f)
}

/// The basis always tangent to every perturbation of the model: all the
/// imaginary translations, the shears X_-2..X_{1-n}, X'_-1, and V_{2-n}.
pub fn f_basis(m: &HSModel) -> CrResult<Vec<(String, HoloField)>> {
    let n = m.n();
    let mut names = vec![CatalogName::YTop];
    names.extend((1..=n - 1).map(CatalogName::Y));
    names.push(CatalogName::YPrime);
    names.extend((2..=n - 1).map(CatalogName::X));
    names.push(CatalogName::XPrime);
    names.push(CatalogName::V2n);
    names
        .into_iter()
        .map(|nm| Ok((nm.label(n), catalog_field(m, &nm)?)))
        .collect()
}

/// The full model algebra: the tangent basis plus X_-1, U_0, V_0.
pub fn g_basis(m: &HSModel) -> CrResult<Vec<(String, HoloField)>> {
    let n = m.n();
    let mut out = f_basis(m)?;
    for nm in [CatalogName::X(1), CatalogName::U0, CatalogName::V0] {
        out.push((nm.label(n), catalog_field(m, &nm)?));
    }
    Ok(out)
}

/// The complex nilpotent basis e_0..e_2n of the model algebra:
/// e_j = X_-j + i Y_-j, e_{n-1+j} = X_-j - i Y_-j, e_0 = -4 d/dw,
/// e_{2n-1} = -X'_-1 - 2i Y'_-1, e_{2n} = -X'_-1 + 2i Y'_-1.
pub fn e_basis(m: &HSModel) -> CrResult<Vec<(String, HoloField)>> {
    let n = m.n();
    let i = GaussRat::i();
    let mut out = Vec::with_capacity(2 * n + 1);
    let ytop = catalog_field(m, &CatalogName::YTop)?;
    // e_0 = 4 i Y_{-n} = -4 d/dw
    out.push(("e_0".to_string(), ytop.scale(&i.times(&gr(4, 1)))));
    for j in 1..=n - 1 {
        let x = catalog_field(m, &CatalogName::X(j))?;
        let y = catalog_field(m, &CatalogName::Y(j))?;
        out.push((format!("e_{j}"), x.add(&y.scale(&i))?));
    }
    for j in 1..=n - 1 {
        let x = catalog_field(m, &CatalogName::X(j))?;
        let y = catalog_field(m, &CatalogName::Y(j))?;
        out.push((format!("e_{}", n - 1 + j), x.sub(&y.scale(&i))?));
    }
    let xp = catalog_field(m, &CatalogName::XPrime)?;
    let yp = catalog_field(m, &CatalogName::YPrime)?;
    let minus = GaussRat::real(-Rat::one());
    let two_i = i.times(&gr(2, 1));
    out.push((
        format!("e_{}", 2 * n - 1),
        xp.scale(&minus).sub(&yp.scale(&two_i))?,
    ));
    out.push((
        format!("e_{}", 2 * n),
        xp.scale(&minus).add(&yp.scale(&two_i))?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_yprime_xprime_vanishes() {
        // X'_-1 coefficients are zeta-free, so [Y'_-1, X'_-1] = 0.
        let m = HSModel::model_m0(5).unwrap();
        let yp = catalog_field(&m, &CatalogName::YPrime).unwrap();
        let xp = catalog_field(&m, &CatalogName::XPrime).unwrap();
        let b = lie_bracket(&m, &yp, &xp).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn bracket_v0_with_x1() {
        // [V_0, X_-1] = -X_-1
        let m = HSModel::model_m0(5).unwrap();
        let v0 = catalog_field(&m, &CatalogName::V0).unwrap();
        let x1 = catalog_field(&m, &CatalogName::X(1)).unwrap();
        let b = lie_bracket(&m, &v0, &x1).unwrap();
        assert_eq!(b, x1.scale(&GaussRat::real(rat_int(-1))));
    }

    #[test]
    fn heisenberg_bracket_e1_top() {
        // [e_1, e_{2n-2}] = -4 d/dw = e_0
        for n in [3usize, 5, 6] {
            let m = HSModel::model_m0(n).unwrap();
            let basis = e_basis(&m).unwrap();
            let e1 = &basis[1].1;
            let etop = &basis[2 * n - 2].1;
            let b = lie_bracket(&m, e1, etop).unwrap();
            let mut expect = HoloField::zero(&m);
            expect.comps[0] = Poly::constant(m.table(), GaussRat::real(rat_int(-4)));
            assert_eq!(b, expect, "n={n}");
            assert_eq!(b, basis[0].1, "e_0 is -4 d/dw");
        }
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi() {
        let m = HSModel::model_m0(5).unwrap();
        let fields: Vec<HoloField> = [
            CatalogName::X(1),
            CatalogName::XPrime,
            CatalogName::U0,
            CatalogName::V2n,
            CatalogName::Y(3),
        ]
        .iter()
        .map(|n| catalog_field(&m, n).unwrap())
        .collect();
        for a in &fields {
            for b in &fields {
                let ab = lie_bracket(&m, a, b).unwrap();
                let ba = lie_bracket(&m, b, a).unwrap();
                assert_eq!(ab, ba.scale(&GaussRat::real(rat_int(-1))));
            }
        }
        for a in &fields {
            for b in &fields {
                for c in &fields {
                    let t1 = lie_bracket(&m, &lie_bracket(&m, a, b).unwrap(), c).unwrap();
                    let t2 = lie_bracket(&m, &lie_bracket(&m, b, c).unwrap(), a).unwrap();
                    let t3 = lie_bracket(&m, &lie_bracket(&m, c, a).unwrap(), b).unwrap();
                    let sum = t1.add(&t2).unwrap().add(&t3).unwrap();
                    assert!(sum.is_zero());
                }
            }
        }
    }

    #[test]
    fn u0m_specializes_to_u0() {
        let m = HSModel::model_m0(6).unwrap();
        let u0 = catalog_field(&m, &CatalogName::U0).unwrap();
        let u0n = catalog_field(&m, &CatalogName::U0m(6)).unwrap();
        assert_eq!(u0, u0n);
    }

    #[test]
    fn c5_field_display() {
        // i z_1^2 d/dz_2 - 2i z_1 d/dzeta on the n = 4 model, exactly
        let m = HSModel::model_m0(4).unwrap();
        let w = catalog_field(&m, &CatalogName::C5).unwrap();
        let z1 = Poly::<GaussRat>::var(m.table(), m.block_z(0, 1).0);
        assert!(w.coeff_w().is_zero());
        assert!(w.coeff_z(1).is_zero());
        assert_eq!(*w.coeff_z(2), z1.pow(2).scale(&GaussRat::i()));
        assert_eq!(
            *w.coeff_zeta(),
            z1.scale(&GaussRat::new(rat_int(0), rat_int(-2)))
        );
        assert!(w.coeff_z(3).is_zero());
        assert!(catalog_field(&HSModel::model_m0(5).unwrap(), &CatalogName::C5).is_err());
    }

    #[test]
    fn vf_type_ii_display() {
        // (w + z_1 + 2 z_{n-1}) d/dw + d/dz_1 - zeta d/dz_2
        //   + (1/(n-2)) zeta d/dzeta + sum ((j-1)/(n-2)) z_j d/dz_j
        let n = 5;
        let m = HSModel::model_m0(n).unwrap();
        let vf = catalog_field(&m, &CatalogName::Vf(FamilyTag::TypeII)).unwrap();
        let t = m.table();
        let z = |j: usize| Poly::<GaussRat>::var(t, m.block_z(0, j).0);
        let zeta = Poly::<GaussRat>::var(t, m.zeta().0);
        let wv = Poly::<GaussRat>::var(t, m.w().0);
        let r = |a: i64, b: i64| GaussRat::real(rat(a, b));
        let expect_w = wv
            .add(&z(1))
            .unwrap()
            .add(&z(n - 1).scale(&r(2, 1)))
            .unwrap();
        assert_eq!(*vf.coeff_w(), expect_w);
        // d/dz_1: 1 + 0*z_1 (the sum contributes (1-1)/(n-2) = 0)
        assert_eq!(*vf.coeff_z(1), Poly::one(t));
        // d/dz_2: -zeta + (1/3) z_2
        assert_eq!(
            *vf.coeff_z(2),
            zeta.neg().add(&z(2).scale(&r(1, 3))).unwrap()
        );
        assert_eq!(*vf.coeff_z(3), z(3).scale(&r(2, 3)));
        assert_eq!(*vf.coeff_z(4), z(4));
        assert_eq!(*vf.coeff_zeta(), zeta.scale(&r(1, 3)));
    }

    #[test]
    fn rejects_nonholomorphic_coefficients() {
        let m = HSModel::model_m0(3).unwrap();
        let mut comps = vec![Poly::zero(m.table()); 4];
        comps[0] = Poly::var(m.table(), m.block_z(0, 1).2).map_coeff(GaussRat::from_rat);
        assert!(HoloField::new(&m, comps).is_err());
    }
}
