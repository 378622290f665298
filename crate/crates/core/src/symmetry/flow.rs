//! Closed-form flows of the translation-like model symmetries, polynomial
//! self-maps of C^{n+1}, and transport checks between models.

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{CrError, CrResult};
use crate::hypersurface::HSModel;
use crate::ring::coeff::{rat_to_string, Coeff, GaussRat, Rat};
use crate::ring::poly::Poly;
use crate::ring::vars::VarId;

use super::field::holo_coords;

/// A polynomial self-map of C^{n+1}; components are the images of the
/// coordinates (w, z_1, ..., z_{n-1}, zeta).
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMap {
    n: usize,
    comps: Vec<Poly<GaussRat>>,
}

impl PolyMap {
    pub fn identity(m: &HSModel) -> Self {
        let comps = holo_coords(m)
            .into_iter()
            .map(|v| Poly::var(m.table(), v))
            .collect();
        PolyMap { n: m.n(), comps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn comps(&self) -> &[Poly<GaussRat>] {
        &self.comps
    }

    pub fn comp(&self, k: usize) -> &Poly<GaussRat> {
        &self.comps[k]
    }

    /// self after other: (self . other)(z) = self(other(z)).
    pub fn compose(&self, m: &HSModel, other: &PolyMap) -> CrResult<PolyMap> {
        let coords = holo_coords(m);
        let bindings: Vec<(VarId, Poly<GaussRat>)> = coords
            .iter()
            .copied()
            .zip(other.comps.iter().cloned())
            .collect();
        let comps = self
            .comps
            .iter()
            .map(|c| c.substitute(&bindings))
            .collect::<CrResult<Vec<_>>>()?;
        Ok(PolyMap { n: self.n, comps })
    }

    /// Image of a point given in the complex coordinates (w, z_1.., zeta).
    pub fn apply_point(&self, m: &HSModel, point: &[GaussRat]) -> CrResult<Vec<GaussRat>> {
        let coords = holo_coords(m);
        if point.len() != coords.len() {
            return Err(CrError::DimensionMismatch(format!(
                "point needs {} coordinates",
                coords.len()
            )));
        }
        let mut full = vec![GaussRat::c_zero(); m.table().len()];
        for (v, val) in coords.iter().zip(point) {
            full[*v] = val.clone();
        }
        self.comps.iter().map(|c| c.eval(&full)).collect()
    }

    pub fn to_json(&self, m: &HSModel) -> serde_json::Value {
        let coords = holo_coords(m);
        let mut map = serde_json::Map::new();
        for (k, &v) in coords.iter().enumerate() {
            map.insert(
                m.table().name(v).to_string(),
                crate::ring::poly::poly_to_json_gauss(&self.comps[k]),
            );
        }
        serde_json::Value::Object(map)
    }
}

/// Generators with closed-form flows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlowGen {
    /// X_-j for j = 1..n-1.
    X(usize),
    /// Y_-j for j = 1..n-1.
    Y(usize),
    /// Y_-n: imaginary translation of w.
    YTop,
    /// Y'_-1: imaginary translation of zeta.
    YPrime,
    /// X'_-1: real translation of zeta with the triangular corrections.
    XPrime,
}

/// Flow at time t: every formula is polynomial in t, so the map is built
/// with t symbolic and then evaluated. The flow property
/// d/dt Fl_t = X(Fl_t) is checked exactly in the tests.
pub fn flow_map(m: &HSModel, gen: FlowGen, time: &Rat) -> CrResult<PolyMap> {
    let sym = flow_map_symbolic(m, gen)?;
    let tau = m.tau();
    let tval = Poly::constant(m.table(), GaussRat::real(time.clone()));
    let comps = sym
        .comps
        .iter()
        .map(|c| c.substitute(&[(tau, tval.clone())]))
        .collect::<CrResult<Vec<_>>>()?;
    Ok(PolyMap { n: sym.n, comps })
}

/// The flow with the time left as the symbolic variable tau.
pub fn flow_map_symbolic(m: &HSModel, gen: FlowGen) -> CrResult<PolyMap> {
    if !m.is_single_block() {
        return Err(CrError::InvalidParam(
            "flows are defined on single-block models".into(),
        ));
    }
    let n = m.n();
    let t = m.table();
    let tau = Poly::<GaussRat>::var(t, m.tau());
    let mut map = PolyMap::identity(m);
    let zvar = |j: usize| Poly::<GaussRat>::var(t, m.block_z(0, j).0);
    let zetavar = || Poly::<GaussRat>::var(t, m.zeta().0);
    match gen {
        FlowGen::Y(j) => {
            if !(1..=n - 1).contains(&j) {
                return Err(CrError::InvalidParam(format!("Y index {j} out of range")));
            }
            map.comps[j] = map.comps[j].add(&tau.scale(&GaussRat::i()))?;
        }
        FlowGen::YTop => {
            map.comps[0] = map.comps[0].add(&tau.scale(&GaussRat::i()))?;
        }
        FlowGen::YPrime => {
            map.comps[n] = map.comps[n].add(&tau.scale(&GaussRat::i()))?;
        }
        FlowGen::X(j) => {
            if !(1..=n - 1).contains(&j) {
                return Err(CrError::InvalidParam(format!("X index {j} out of range")));
            }
            map.comps[j] = map.comps[j].add(&tau)?;
            if j <= n - 2 {
                // z_{j+1} -= t zeta
                map.comps[j + 1] = map.comps[j + 1].sub(&tau.mul(&zetavar())?)?;
                // w += 2 t z_{n-j} + alpha
                let mut w_gain = tau
                    .mul(&zvar(n - j))?
                    .scale(&GaussRat::real(Rat::one() + Rat::one()));
                if n == 2 * j {
                    w_gain = w_gain.add(&tau.pow(2))?;
                } else if n == 2 * j + 1 {
                    w_gain = w_gain.sub(&tau.pow(2).mul(&zetavar())?)?;
                }
                map.comps[0] = map.comps[0].add(&w_gain)?;
            } else {
                // X_{1-n}: w += 2 t z_1
                let w_gain = tau
                    .mul(&zvar(1))?
                    .scale(&GaussRat::real(Rat::one() + Rat::one()));
                map.comps[0] = map.comps[0].add(&w_gain)?;
            }
        }
        FlowGen::XPrime => {
            // zeta += 2t; z_j += beta_j with beta_2 = (2-n) z_1 t and
            // beta_j' = (2j-2-n)(z_{j-1} + beta_{j-1}), beta_j(0) = 0.
            map.comps[n] =
                map.comps[n].add(&tau.scale(&GaussRat::real(Rat::one() + Rat::one())))?;
            let mut beta_prev: Option<Poly<GaussRat>> = None;
            for j in 2..=n - 1 {
                let c = GaussRat::real(crate::ring::coeff::rat_int(2 * j as i64 - 2 - n as i64));
                let mut b = zvar(j - 1).mul(&tau)?;
                if let Some(prev) = &beta_prev {
                    b = b.add(&integrate_tau(prev, m)?)?;
                }
                let beta = b.scale(&c);
                map.comps[j] = map.comps[j].add(&beta)?;
                beta_prev = Some(beta);
            }
        }
    }
    Ok(map)
}

/// Formal antiderivative in tau (zero constant of integration).
fn integrate_tau(p: &Poly<GaussRat>, m: &HSModel) -> CrResult<Poly<GaussRat>> {
    let tau = m.tau();
    let mut out = Poly::zero(m.table());
    for (exps, c) in p.terms() {
        let mut e = exps.clone();
        e[tau] += 1;
        let denom = GaussRat::real(Rat::from_integer((e[tau] as i64).into()));
        let coeff = c.times(&denom.inv().expect("positive exponent"));
        out = out.add(&Poly::monomial(m.table(), e, coeff))?;
    }
    Ok(out)
}

/// The anisotropic scaling w -> lam^2 mu^n w, z_j -> lam mu^j z_j,
/// zeta -> mu zeta. It carries the model with perturbation f* to the model
/// with perturbation c1 f*(c2 x), where c1 = lam^2 mu^n and c2 = 1/(lam mu).
pub fn rescaling_map(m: &HSModel, lam: &Rat, mu: &Rat) -> CrResult<PolyMap> {
    if lam.is_zero() || mu.is_zero() {
        return Err(CrError::InvalidParam(
            "scaling constants must be nonzero".into(),
        ));
    }
    let n = m.n();
    let t = m.table();
    let mut comps = Vec::with_capacity(n + 1);
    let mut c1 = lam * lam;
    for _ in 0..n {
        c1 *= mu;
    }
    comps.push(Poly::var(t, m.w().0).scale(&GaussRat::real(c1)));
    let mut factor = lam.clone();
    for j in 1..=n - 1 {
        factor *= mu;
        comps.push(Poly::var(t, m.block_z(0, j).0).scale(&GaussRat::real(factor.clone())));
    }
    comps.push(Poly::var(t, m.zeta().0).scale(&GaussRat::real(mu.clone())));
    Ok(PolyMap { n, comps })
}

/// Scaling constants (c1, c2) realized by `rescaling_map`.
pub fn rescaling_constants(n: usize, lam: &Rat, mu: &Rat) -> (Rat, Rat) {
    let mut c1 = lam * lam;
    for _ in 0..n {
        c1 *= mu;
    }
    let c2 = (lam * mu).recip();
    (c1, c2)
}

/// Translation w -> w - c (real c).
pub fn w_translation(m: &HSModel, c: &Rat) -> PolyMap {
    let mut map = PolyMap::identity(m);
    map.comps[0] = map.comps[0]
        .sub(&Poly::constant(m.table(), GaussRat::real(c.clone())))
        .expect("same table");
    map
}

/// Composition of flows that moves the model point
/// (f(-x1), -x1, 0, ..., 0) to the origin: the z_1 translation flow
/// followed by the w translation by f(-x1). It carries the model of f to
/// the model of x -> f(x - x1) - f(-x1); the pure-flow part preserves
/// the model function u - P exactly.
pub fn recentering_maps(m: &HSModel, x1: &Rat) -> CrResult<(PolyMap, PolyMap)> {
    if !m.is_single_block() {
        return Err(CrError::InvalidParam(
            "recentering is defined on single-block models".into(),
        ));
    }
    let jet = &m.blocks()[0].jet;
    if !jet.is_exact() && !x1.is_zero() {
        return Err(CrError::NonExactJet);
    }
    let flows = flow_map(m, FlowGen::X(1), x1)?;
    // f(-x1)
    let minus = -x1;
    let mut val = Rat::zero();
    let mut pow = Rat::one();
    for c in jet.coeffs() {
        val += c * &pow;
        pow *= &minus;
    }
    let full = w_translation(m, &val).compose(m, &flows)?;
    Ok((flows, full))
}

/// General point-to-origin composition of flows (plus one w-translation),
/// solved sequentially; the returned pair is (pure flows, full map). The
/// point is given in complex coordinates and must lie on the model.
pub fn move_to_origin(m: &HSModel, point: &[GaussRat]) -> CrResult<(PolyMap, PolyMap)> {
    let n = m.n();
    let mut current = point.to_vec();
    let mut flows = PolyMap::identity(m);
    let push =
        |gen: FlowGen, t: &Rat, flows: &mut PolyMap, current: &mut Vec<GaussRat>| -> CrResult<()> {
            if t.is_zero() {
                return Ok(());
            }
            let fl = flow_map(m, gen, t)?;
            *current = fl.apply_point(m, current)?;
            *flows = fl.compose(m, flows)?;
            Ok(())
        };
    for j in 1..=n - 1 {
        let t = -current[j].re.clone();
        push(FlowGen::X(j), &t, &mut flows, &mut current)?;
    }
    let t = -current[n].re.clone() / (Rat::one() + Rat::one());
    push(FlowGen::XPrime, &t, &mut flows, &mut current)?;
    for j in 1..=n - 1 {
        let t = -current[j].im.clone();
        push(FlowGen::Y(j), &t, &mut flows, &mut current)?;
    }
    let t = -current[n].im.clone();
    push(FlowGen::YPrime, &t, &mut flows, &mut current)?;
    let t = -current[0].im.clone();
    push(FlowGen::YTop, &t, &mut flows, &mut current)?;
    let full = w_translation(m, &current[0].re).compose(m, &flows)?;
    Ok((flows, full))
}

#[derive(Debug)]
pub struct TransportReport {
    pub ok: bool,
    pub lambda: Rat,
    pub verified_degree: Option<usize>,
    pub witness: Option<String>,
}

impl TransportReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ok": self.ok,
            "lambda": rat_to_string(&self.lambda),
            "verified_degree": self.verified_degree,
            "witness": self.witness,
        })
    }
}

/// Verifies rho_dst(Psi(z)) = lambda rho_src(z) where rho = u - Phi, with
/// lambda read off the u-coefficient: exactly for exact jets, to total
/// degree D otherwise.
pub fn transport_check(
    map: &PolyMap,
    m_src: &HSModel,
    m_dst: &HSModel,
    degree: Option<usize>,
) -> CrResult<TransportReport> {
    if m_src.n() != m_dst.n() {
        return Err(CrError::DimensionMismatch(
            "models differ in dimension".into(),
        ));
    }
    let t = m_src.table();
    let n = m_src.n();
    // realified components of the map
    let re_parts: Vec<Poly<Rat>> = map
        .comps
        .iter()
        .map(|c| Ok(c.realify()?.0))
        .collect::<CrResult<Vec<_>>>()?;
    // rho_dst composed with the map
    let phi_dst = m_dst.defining_polynomial();
    let xs_dst = m_dst.cr_real_vars();
    let mut bindings: Vec<(VarId, Poly<Rat>)> = Vec::new();
    for (k, &xv) in xs_dst.iter().take(n - 1).enumerate() {
        bindings.push((xv, re_parts[k + 1].clone()));
    }
    bindings.push((m_dst.zeta().2, re_parts[n].clone()));
    let phi_composed = phi_dst.substitute(&bindings)?;
    let rho_composed = re_parts[0].sub(&phi_composed)?;
    // rho_src = u - Phi_src
    let rho_src = Poly::<Rat>::var(t, m_src.w().2).sub(&m_src.defining_polynomial())?;
    // lambda from the u-coefficient
    let mut u_exps = vec![0u16; t.len()];
    u_exps[m_src.w().2] = 1;
    let lambda = rho_composed.coeff(&u_exps);
    let residual = rho_composed.sub(&rho_src.scale(&lambda))?;
    let exact = m_src.jets_exact() && m_dst.jets_exact();
    let (ok, verified_degree, witness) = if exact {
        let ok = residual.is_zero();
        (ok, None, witness_of(&residual, m_src))
    } else {
        let dmax = m_src.min_jet_order().min(m_dst.min_jet_order());
        let d = degree.unwrap_or_else(|| dmax.min(12));
        if d > dmax {
            return Err(CrError::DegreeOutOfRange(d, dmax));
        }
        let tr = residual.truncate_degree(d);
        let ok = tr.is_zero();
        (ok, Some(d), witness_of(&tr, m_src))
    };
    Ok(TransportReport {
        ok,
        lambda,
        verified_degree,
        witness,
    })
}

fn witness_of(residual: &Poly<Rat>, m: &HSModel) -> Option<String> {
    residual.smallest_term().map(|(exps, c)| {
        let mono: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                if e == 1 {
                    m.table().name(v).to_string()
                } else {
                    format!("{}^{}", m.table().name(v), e)
                }
            })
            .collect();
        format!("{}*{}", rat_to_string(c), mono.join("*"))
    })
}

/// The model function F = u - P (quadric part only); the flow maps preserve
/// it exactly.
pub fn model_function(m: &HSModel) -> CrResult<Poly<Rat>> {
    let zero_jets = HSModel::new(
        m.blocks()
            .iter()
            .map(|b| crate::hypersurface::BlockSpec {
                size: b.size,
                sign: b.sign,
                jet: crate::jet::Jet::zero(4),
            })
            .collect(),
    )?;
    Poly::<Rat>::var(m.table(), m.w().2).sub(&zero_jets.defining_polynomial())
}

/// Checks F(Psi(z)) = F(z) exactly for F = u - P.
pub fn preserves_model_function(map: &PolyMap, m: &HSModel) -> CrResult<bool> {
    let f = model_function(m)?;
    let re_parts: Vec<Poly<Rat>> = map
        .comps
        .iter()
        .map(|c| Ok(c.realify()?.0))
        .collect::<CrResult<Vec<_>>>()?;
    let xs = m.cr_real_vars();
    let n = m.n();
    let mut bindings: Vec<(VarId, Poly<Rat>)> = vec![(m.w().2, re_parts[0].clone())];
    for (k, &xv) in xs.iter().take(n - 1).enumerate() {
        bindings.push((xv, re_parts[k + 1].clone()));
    }
    bindings.push((m.zeta().2, re_parts[n].clone()));
    Ok(f.substitute(&bindings)? == f)
}
