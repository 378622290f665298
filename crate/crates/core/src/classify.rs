//! Jet-level classification: equivalence of perturbations at the origin and
//! at arbitrary points, the homogeneity ODE y y'' = c (y')^2 on y = f^(4),
//! family recognition, symmetry-algebra dimension, and the power-series
//! regeneration of perturbations from scaling data.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{CrError, CrResult};
use crate::jet::{family_jet, FamilyTag, Jet};
use crate::ring::coeff::{rat, rat_int, rat_nth_root, rat_pow, rat_to_string, Rat};

/// Witness constants of the fourth-derivative matching
/// f^(4)(x) = c1 (f*)^(4)(c2 x).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceWitness {
    pub c1: Rat,
    pub c2: Rat,
    /// One nonzero coefficient only: a one-parameter family of witnesses
    /// exists and the returned pair is the representative with c2 = 1.
    pub degenerate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Equivalence {
    NotEquivalent,
    /// Both fourth-derivative jets vanish to the verified order.
    BothZero,
    Witness(EquivalenceWitness),
    /// Equivalent over the reals, but c2 is an irrational root:
    /// c2^d = c2_pow_d has no rational solution.
    RealWitness {
        c2_pow_d: Rat,
        d: u32,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceReport {
    pub outcome: Equivalence,
    /// Index range of fourth-derivative coefficients that were matched.
    pub verified_order: usize,
}

impl EquivalenceReport {
    pub fn equivalent(&self) -> bool {
        !matches!(self.outcome, Equivalence::NotEquivalent)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let witness = match &self.outcome {
            Equivalence::Witness(w) => json!({
                "c1": rat_to_string(&w.c1),
                "c2": rat_to_string(&w.c2),
                "degenerate": w.degenerate,
            }),
            Equivalence::RealWitness { c2_pow_d, d } => json!({
                "c2_pow_d": rat_to_string(c2_pow_d),
                "d": d,
                "rational": false,
            }),
            _ => serde_json::Value::Null,
        };
        json!({
            "equivalent": if self.equivalent() {
                serde_json::Value::String(format!("to-order-{}", self.verified_order))
            } else {
                serde_json::Value::Bool(false)
            },
            "witness": witness,
        })
    }
}

/// Decides f ~ f* at the origin by matching the fourth-derivative jets
/// g_m = c1 c2^m h_m for all m up to the verified order.
pub fn equivalent_at_origin(f: &Jet, fstar: &Jet) -> CrResult<EquivalenceReport> {
    if f.order() != fstar.order() {
        return Err(CrError::OrderMismatch(f.order(), fstar.order()));
    }
    if f.order() < 6 {
        return Err(CrError::OrderTooSmall(f.order(), 6));
    }
    if !f.coeff(0).is_zero() || !fstar.coeff(0).is_zero() {
        return Err(CrError::Unnormalized("jets must vanish at 0".into()));
    }
    let g = f.fourth_derivative()?;
    let h = fstar.fourth_derivative()?;
    let verified_order = g.order();
    let sg = g.support();
    let sh = h.support();
    if sg != sh {
        return Ok(EquivalenceReport {
            outcome: Equivalence::NotEquivalent,
            verified_order,
        });
    }
    if sg.is_empty() {
        return Ok(EquivalenceReport {
            outcome: Equivalence::BothZero,
            verified_order,
        });
    }
    let ratios: Vec<(usize, Rat)> = sg
        .iter()
        .map(|&mth| (mth, g.coeff(mth) / h.coeff(mth)))
        .collect();
    let (m0, r0) = ratios[0].clone();
    if ratios.len() == 1 {
        return Ok(EquivalenceReport {
            outcome: Equivalence::Witness(EquivalenceWitness {
                c1: r0,
                c2: Rat::one(),
                degenerate: true,
            }),
            verified_order,
        });
    }
    // c2^(m - m0) = r_m / r_0 for every support index m > m0.
    let pairs: Vec<(u32, Rat)> = ratios[1..]
        .iter()
        .map(|(mth, r)| ((*mth - m0) as u32, r / &r0))
        .collect();
    // d = gcd of the exponents; tau = c2^d by a Bezout combination.
    let mut d: i64 = 0;
    for (e, _) in &pairs {
        d = gcd_i64(d, *e as i64);
    }
    let d = d as u32;
    let tau = bezout_power(&pairs, d);
    // consistency: every pair must satisfy rho = tau^(e/d)
    for (e, rho) in &pairs {
        if rat_pow(&tau, (*e / d) as i64) != *rho {
            return Ok(EquivalenceReport {
                outcome: Equivalence::NotEquivalent,
                verified_order,
            });
        }
    }
    if let Some(c2) = rat_nth_root(&tau, d) {
        let c1 = &r0 / rat_pow(&c2, m0 as i64);
        return Ok(EquivalenceReport {
            outcome: Equivalence::Witness(EquivalenceWitness {
                c1,
                c2,
                degenerate: false,
            }),
            verified_order,
        });
    }
    // no rational root; a real one exists iff d is odd or tau > 0
    if d % 2 == 1 || tau.is_positive() {
        Ok(EquivalenceReport {
            outcome: Equivalence::RealWitness { c2_pow_d: tau, d },
            verified_order,
        })
    } else {
        Ok(EquivalenceReport {
            outcome: Equivalence::NotEquivalent,
            verified_order,
        })
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

/// tau = prod rho_i^{alpha_i} where sum alpha_i e_i = d = gcd(e_i).
fn bezout_power(pairs: &[(u32, Rat)], d: u32) -> Rat {
    // iterative: maintain (g, tau) with tau = c2^g
    let mut g: i64 = pairs[0].0 as i64;
    let mut tau = pairs[0].1.clone();
    for (e, rho) in &pairs[1..] {
        let (gg, x, y) = ext_gcd(g, *e as i64);
        tau = rat_pow(&tau, x) * rat_pow(rho, y);
        g = gg;
        if g == d as i64 {
            break;
        }
    }
    tau
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Equivalence near arbitrary points: recenter both jets and decide at the
/// origin. Exact jets only.
pub fn equivalent_at_points(
    f: &Jet,
    x1f: &Rat,
    fstar: &Jet,
    x1fstar: &Rat,
) -> CrResult<EquivalenceReport> {
    if !f.is_exact() || !fstar.is_exact() {
        return Err(CrError::NonExactJet);
    }
    equivalent_at_origin(&f.recenter(x1f)?, &fstar.recenter(x1fstar)?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneityResult {
    pub homogeneous: bool,
    /// The ODE constant, absent for the zero and quartic-monomial cases
    /// (where every c works).
    pub c: Option<Rat>,
    pub family: Option<FamilyTag>,
    /// Type I parameter when the family is TypeI.
    pub a: Option<Rat>,
    pub verified_order: usize,
}

impl HomogeneityResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "homogeneous": self.homogeneous,
            "c": self.c.as_ref().map(rat_to_string),
            "family": self.family.as_ref().map(|f| f.to_json()),
            "a": self.a.as_ref().map(rat_to_string),
            "verified_order": self.verified_order,
        })
    }
}

/// The homogeneity criterion: with y = f^(4), either y = 0 (the model), or
/// y(0) != 0 and y y'' = c (y')^2 to the verified order. A vanishing-but-
/// nonzero y means the origin order exceeds four, which rules homogeneity
/// out.
pub fn homogeneity_test(f: &Jet) -> CrResult<HomogeneityResult> {
    if !f.coeff(0).is_zero() {
        return Err(CrError::Unnormalized("f(0) must vanish".into()));
    }
    if f.order() < 6 {
        return Err(CrError::OrderTooSmall(f.order(), 6));
    }
    let y = f.fourth_derivative()?;
    let res_order = y.order() - 2;
    if y.is_zero() {
        return Ok(HomogeneityResult {
            homogeneous: true,
            c: None,
            family: None,
            a: None,
            verified_order: res_order,
        });
    }
    if y.coeff(0).is_zero() {
        return Ok(HomogeneityResult {
            homogeneous: false,
            c: None,
            family: None,
            a: None,
            verified_order: res_order,
        });
    }
    let yp = y.derivative();
    if yp.is_zero() {
        // constant y: the quartic monomial; the ODE holds for every c
        return Ok(HomogeneityResult {
            homogeneous: true,
            c: None,
            family: None,
            a: None,
            verified_order: res_order,
        });
    }
    let ypp = yp.derivative();
    let yt = y.truncate(res_order);
    let ypt = yp.truncate(res_order);
    let yppt = ypp.truncate(res_order);
    let lhs = yt.mul(&yppt)?;
    let rhs = ypt.mul(&ypt)?;
    let first = rhs.support().first().copied().expect("y' nonzero");
    let c = lhs.coeff(first) / rhs.coeff(first);
    let residual = lhs.sub(&rhs.scale(&c))?;
    Ok(HomogeneityResult {
        homogeneous: residual.is_zero(),
        c: if residual.is_zero() { Some(c) } else { None },
        family: None,
        a: None,
        verified_order: res_order,
    })
}

/// Maps the ODE constant to the family: the five special constants name
/// Types II-VI; anything else is Type I with a = (5-4c)/(1-c). Validated by
/// substituting each closed form into the ODE (see the tests).
pub fn family_from_constant(c: &Rat) -> FamilyTag {
    if *c == rat_int(1) {
        FamilyTag::TypeII
    } else if *c == rat(5, 4) {
        FamilyTag::TypeIII
    } else if *c == rat(4, 3) {
        FamilyTag::TypeIV
    } else if *c == rat(3, 2) {
        FamilyTag::TypeV
    } else if *c == rat_int(2) {
        FamilyTag::TypeVI
    } else {
        let a = (rat_int(5) - rat_int(4) * c) / (rat_int(1) - c);
        FamilyTag::TypeI { a }
    }
}

/// Recognizes the family of a homogeneous jet and certifies the tag by
/// matching the input against the family jet modulo the scaling action
/// (coefficients of x^2, x^3 are quotiented out by taking fourth
/// derivatives).
pub fn recognize_family(f: &Jet) -> CrResult<FamilyTag> {
    let h = homogeneity_test(f)?;
    if !h.homogeneous {
        return Err(CrError::InvalidParam(
            "family recognition needs a homogeneous jet".into(),
        ));
    }
    let y = f.fourth_derivative()?;
    let tag = if y.is_zero() {
        FamilyTag::Zero
    } else if y.derivative().is_zero() {
        FamilyTag::Monomial {
            m: 4,
            a: f.coeff(4),
        }
    } else {
        family_from_constant(h.c.as_ref().expect("homogeneous with nonconstant y"))
    };
    // certification: the input must be scaling-equivalent to the family jet
    let reference = match &tag {
        FamilyTag::Zero => Jet::zero(f.order()),
        other => family_jet(other, f.order())?,
    };
    let report = equivalent_at_origin(f, &reference)?;
    if !report.equivalent() {
        return Err(CrError::CertificationMismatch(format!(
            "{tag:?} against its family jet"
        )));
    }
    Ok(tag)
}

/// Homogeneity plus recognition in one record.
pub fn classify_homogeneity(f: &Jet) -> CrResult<HomogeneityResult> {
    let mut h = homogeneity_test(f)?;
    if h.homogeneous {
        let tag = recognize_family(f)?;
        if let FamilyTag::TypeI { a } = &tag {
            h.a = Some(a.clone());
        }
        h.family = Some(tag);
    }
    Ok(h)
}

/// Symmetry-algebra dimension of the model with perturbation f for n > 4:
/// 2n+4 for the model itself, 2n+3 for the quartic monomial, 2n+2 for other
/// monomials and the homogeneous families, 2n+1 otherwise. The x^2 and x^3
/// coefficients are quotiented out by the scaling action.
pub fn hol_dimension(f: &Jet, n: usize) -> CrResult<usize> {
    if n < 5 {
        return Err(CrError::InvalidParam(
            "the dimension count needs n > 4".into(),
        ));
    }
    if !f.coeff(0).is_zero() || !f.coeff(1).is_zero() {
        return Err(CrError::Unnormalized("f and f' must vanish at 0".into()));
    }
    let mut coeffs = f.coeffs().to_vec();
    coeffs[2] = Rat::zero();
    if f.order() >= 3 {
        coeffs[3] = Rat::zero();
    }
    let core = Jet::new(f.order(), coeffs, f.is_exact())?;
    if core.is_zero() {
        return Ok(2 * n + 4);
    }
    if let Some((m, _)) = core.monomial_form() {
        return Ok(if m == 4 { 2 * n + 3 } else { 2 * n + 2 });
    }
    let h = homogeneity_test(&core)?;
    Ok(if h.homogeneous { 2 * n + 2 } else { 2 * n + 1 })
}

/// Power-series solution of (np + 2q) f = (1 + (p+q)x) f' - 4x^3 with
/// f vanishing to fourth order, via the recurrence
/// a_{k+1} = [(np + 2q - (p+q)k) a_k + 4 delta_{k,3}] / (k+1).
/// The output always has a_4 = 1; a_5 is the sigma of the compatibility
/// relation np + 2q = 5 sigma + 4(p + q).
pub fn weights4_regenerate(p: &Rat, q: &Rat, n: usize, order: usize) -> CrResult<Jet> {
    if order < 4 {
        return Err(CrError::OrderTooSmall(order, 4));
    }
    let a_coef = rat_int(n as i64) * p + rat_int(2) * q; // np + 2q
    let b_coef = p + q;
    let mut coeffs = vec![Rat::zero(); order + 1];
    for k in 0..order {
        let mut next = (&a_coef - &b_coef * rat_int(k as i64)) * &coeffs[k];
        if k == 3 {
            next += rat_int(4);
        }
        coeffs[k + 1] = next / rat_int(k as i64 + 1);
    }
    // Once a_k = 0 for some k >= 4 the recurrence keeps every later
    // coefficient at zero, so a zero tail certifies an exact polynomial.
    let exact = coeffs
        .iter()
        .rposition(|c| !c.is_zero())
        .map(|top| top < order)
        .unwrap_or(true);
    Jet::new(order, coeffs, exact)
}

/// Residual of the scaling ODE on a given jet; zero to the jet's order
/// means the jet solves it.
pub fn weights4_residual(f: &Jet, p: &Rat, q: &Rat, n: usize) -> CrResult<Jet> {
    let a_coef = rat_int(n as i64) * p + rat_int(2) * q;
    let b_coef = p + q;
    let d = f.derivative();
    let order = d.order();
    // (np+2q) f - (1 + (p+q)x) f' + 4x^3, truncated at order
    let mut coeffs = vec![Rat::zero(); order + 1];
    for k in 0..=order {
        let mut v = &a_coef * f.coeff(k) - d.coeff(k);
        if k >= 1 {
            v -= &b_coef * d.coeff(k - 1);
        }
        if k == 3 {
            v += rat_int(4);
        }
        coeffs[k] = v;
    }
    Jet::new(order, coeffs, false)
}

/// Full classification record for a single-block model's jet.
pub fn classify_jet(f: &Jet, n: usize) -> CrResult<serde_json::Value> {
    let h = classify_homogeneity(f)?;
    let dim = hol_dimension(f, n)?;
    let model_report = {
        let zero = Jet::zero(f.order());
        equivalent_at_origin(f, &zero)?
    };
    Ok(json!({
        "homogeneous": h.homogeneous,
        "c": h.c.as_ref().map(rat_to_string),
        "family": h.family.as_ref().map(|t| t.to_json()),
        "a": h.a.as_ref().map(rat_to_string),
        "verified_order": h.verified_order,
        "equivalent_to_model": model_report.equivalent(),
        "hol_dim": dim,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x4(order: usize) -> Jet {
        family_jet(
            &FamilyTag::Monomial {
                m: 4,
                a: rat_int(1),
            },
            order,
        )
        .unwrap()
    }

    #[test]
    fn degenerate_monomial_witness() {
        let f = x4(8);
        let g = x4(8).scale(&rat_int(3));
        let rep = equivalent_at_origin(&f, &g).unwrap();
        match rep.outcome {
            Equivalence::Witness(w) => {
                assert!(w.degenerate);
                assert_eq!(w.c2, Rat::one());
                assert_eq!(w.c1, rat(1, 3));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn type_i_low_parameters_match_zero() {
        for a in 0..=3 {
            let f = family_jet(&FamilyTag::TypeI { a: rat_int(a) }, 10).unwrap();
            let (norm, _) = f.normalize().unwrap();
            let rep = equivalent_at_origin(&norm, &Jet::zero(10)).unwrap();
            assert_eq!(rep.outcome, Equivalence::BothZero, "a={a}");
        }
    }

    #[test]
    fn type_i_two_equivalent_to_zero_directly() {
        // f = (1+x)^2 - 2x - 1 = x^2 has vanishing fourth derivative, so it
        // matches the zero perturbation without any normalization.
        let f = family_jet(&FamilyTag::TypeI { a: rat_int(2) }, 10).unwrap();
        let rep = equivalent_at_origin(&f, &Jet::zero(10)).unwrap();
        assert_eq!(rep.outcome, Equivalence::BothZero);
    }

    #[test]
    fn type_ii_vs_iii_not_equivalent() {
        let f = family_jet(&FamilyTag::TypeII, 10).unwrap();
        let g = family_jet(&FamilyTag::TypeIII, 10).unwrap();
        let rep = equivalent_at_origin(&f, &g).unwrap();
        assert_eq!(rep.outcome, Equivalence::NotEquivalent);
    }

    #[test]
    fn rescaling_recovers_constants() {
        // f* scaled by (c1, c2) at the function level matches with the
        // fourth-derivative witness (c1 c2^4, c2).
        let fstar = family_jet(&FamilyTag::TypeV, 12).unwrap();
        let (c1, c2) = (rat(3, 2), rat(-2, 1));
        let f = fstar.compose_affine(&c2, &Rat::zero()).unwrap().scale(&c1);
        let rep = equivalent_at_origin(&f, &fstar).unwrap();
        match rep.outcome {
            Equivalence::Witness(w) => {
                assert_eq!(w.c2, c2);
                assert_eq!(w.c1, &c1 * rat_pow(&c2, 4));
                assert!(!w.degenerate);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irrational_witness_detected() {
        // x^4 + x^6 vs x^4 + 2 x^6: equivalent over R with c2 = 1/sqrt2.
        let f = Jet::poly(
            8,
            &[
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(1),
            ],
        )
        .unwrap();
        let g = Jet::poly(
            8,
            &[
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(2),
            ],
        )
        .unwrap();
        let rep = equivalent_at_origin(&f, &g).unwrap();
        match rep.outcome {
            Equivalence::RealWitness { c2_pow_d, d } => {
                assert_eq!(d, 2);
                assert_eq!(c2_pow_d, rat(1, 2));
            }
            other => panic!("{other:?}"),
        }
        // x^4 - x^6 vs x^4 + x^6 needs c2^2 = -1: not equivalent.
        let h = Jet::poly(
            8,
            &[
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(-1),
            ],
        )
        .unwrap();
        let rep = equivalent_at_origin(&h, &f).unwrap();
        assert_eq!(rep.outcome, Equivalence::NotEquivalent);
    }

    #[test]
    fn witnesses_compose() {
        let base = family_jet(&FamilyTag::TypeII, 12).unwrap();
        let s1 = base
            .compose_affine(&rat(1, 2), &Rat::zero())
            .unwrap()
            .scale(&rat_int(2));
        let s2 = s1
            .compose_affine(&rat(3, 1), &Rat::zero())
            .unwrap()
            .scale(&rat(1, 5));
        let w1 = match equivalent_at_origin(&s1, &base).unwrap().outcome {
            Equivalence::Witness(w) => w,
            o => panic!("{o:?}"),
        };
        let w2 = match equivalent_at_origin(&s2, &s1).unwrap().outcome {
            Equivalence::Witness(w) => w,
            o => panic!("{o:?}"),
        };
        let w12 = match equivalent_at_origin(&s2, &base).unwrap().outcome {
            Equivalence::Witness(w) => w,
            o => panic!("{o:?}"),
        };
        assert_eq!(w12.c2, &w1.c2 * &w2.c2);
        assert_eq!(w12.c1, &w1.c1 * &w2.c1);
    }

    #[test]
    fn points_equivalence() {
        // f = x^4 near 1 vs f* = (x-1)^4 near 2: recentering matches them.
        let f = x4(8);
        let fstar = x4(8).recenter(&rat_int(1)).unwrap();
        let rep = equivalent_at_points(&f, &rat_int(1), &fstar, &rat_int(2)).unwrap();
        assert!(rep.equivalent());
        // identical data: witness (1, 1)
        let rep = equivalent_at_points(&f, &rat(1, 2), &f, &rat(1, 2)).unwrap();
        match rep.outcome {
            Equivalence::Witness(w) => {
                assert_eq!(w.c1, Rat::one());
                assert_eq!(w.c2, Rat::one());
            }
            o => panic!("{o:?}"),
        }
        // x^4 at 0 vs x^5 at 0: no
        let f5 = family_jet(
            &FamilyTag::Monomial {
                m: 5,
                a: rat_int(1),
            },
            8,
        )
        .unwrap();
        let rep = equivalent_at_points(&x4(8), &Rat::zero(), &f5, &Rat::zero()).unwrap();
        assert!(!rep.equivalent());
    }

    #[test]
    fn homogeneity_constants_of_the_families() {
        let expect = [
            (FamilyTag::TypeII, rat_int(1)),
            (FamilyTag::TypeIII, rat(5, 4)),
            (FamilyTag::TypeIV, rat(4, 3)),
            (FamilyTag::TypeV, rat(3, 2)),
            (FamilyTag::TypeVI, rat_int(2)),
        ];
        for (tag, c) in expect {
            let f = family_jet(&tag, 12).unwrap();
            let h = homogeneity_test(&f).unwrap();
            assert!(h.homogeneous, "{tag:?}");
            assert_eq!(h.c, Some(c), "{tag:?}");
        }
    }

    #[test]
    fn type_i_constant_formula() {
        // oracle: y = K (1+x)^(a-4) gives c = (a-5)/(a-4)
        for a in [rat(5, 2), rat_int(6), rat_int(7), rat_int(-1), rat(9, 4)] {
            let f = family_jet(&FamilyTag::TypeI { a: a.clone() }, 12).unwrap();
            let h = homogeneity_test(&f).unwrap();
            assert!(h.homogeneous, "a={a}");
            let expect = (&a - rat_int(5)) / (&a - rat_int(4));
            assert_eq!(h.c, Some(expect), "a={a}");
        }
    }

    #[test]
    fn non_homogeneous_cases() {
        // x^4 + x^6 fails for every c
        let f = Jet::poly(
            10,
            &[
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(1),
            ],
        )
        .unwrap();
        assert!(!homogeneity_test(&f).unwrap().homogeneous);
        // x^5: order of vanishing exceeds 4
        let f5 = family_jet(
            &FamilyTag::Monomial {
                m: 5,
                a: rat_int(1),
            },
            10,
        )
        .unwrap();
        assert!(!homogeneity_test(&f5).unwrap().homogeneous);
        // x^4 is homogeneous with unconstrained c
        let h = homogeneity_test(&x4(10)).unwrap();
        assert!(h.homogeneous);
        assert_eq!(h.c, None);
    }

    #[test]
    fn recognition_round_trip() {
        let tags = [
            FamilyTag::TypeI { a: rat_int(6) },
            FamilyTag::TypeI { a: rat(5, 2) },
            FamilyTag::TypeII,
            FamilyTag::TypeIII,
            FamilyTag::TypeIV,
            FamilyTag::TypeV,
            FamilyTag::TypeVI,
        ];
        for tag in tags {
            let f = family_jet(&tag, 12).unwrap();
            assert_eq!(recognize_family(&f).unwrap(), tag, "{tag:?}");
        }
        assert_eq!(recognize_family(&Jet::zero(12)).unwrap(), FamilyTag::Zero);
        assert_eq!(
            recognize_family(&x4(12)).unwrap(),
            FamilyTag::Monomial {
                m: 4,
                a: rat_int(1)
            }
        );
        // recognition survives the scaling action
        let f = family_jet(&FamilyTag::TypeVI, 12)
            .unwrap()
            .compose_affine(&rat(2, 3), &Rat::zero())
            .unwrap()
            .scale(&rat(-7, 2));
        assert_eq!(recognize_family(&f).unwrap(), FamilyTag::TypeVI);
    }

    #[test]
    fn dimension_spectrum_at_n5() {
        let x4x6 = Jet::poly(
            10,
            &[
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(1),
            ],
        )
        .unwrap();
        let f5 = family_jet(
            &FamilyTag::Monomial {
                m: 5,
                a: rat_int(1),
            },
            10,
        )
        .unwrap();
        assert_eq!(hol_dimension(&x4x6, 5).unwrap(), 11);
        assert_eq!(hol_dimension(&f5, 5).unwrap(), 12);
        assert_eq!(hol_dimension(&x4(10), 5).unwrap(), 13);
        assert_eq!(hol_dimension(&Jet::zero(10), 5).unwrap(), 14);
        // families sit at 2n + 2
        let t3 = family_jet(&FamilyTag::TypeIII, 10).unwrap();
        assert_eq!(hol_dimension(&t3, 5).unwrap(), 12);
        assert!(hol_dimension(&Jet::zero(10), 4).is_err());
    }

    #[test]
    fn regeneration_recurrence() {
        // a_4 = 1 for any (p, q)
        for (p, q) in [
            (rat(1, 3), rat(2, 5)),
            (rat_int(2), rat_int(-1)),
            (rat(-1, 2), rat(3, 4)),
        ] {
            let j = weights4_regenerate(&p, &q, 5, 9).unwrap();
            assert_eq!(j.coeff(4), Rat::one());
            // residual of the ODE vanishes by construction; re-verified
            let r = weights4_residual(&j, &p, &q, 5).unwrap();
            assert!(r.is_zero(), "p={p}, q={q}");
        }
        // np + 2q = 4(p+q): sigma = 0 regenerates the quartic monomial
        let n = 5;
        // 5p + 2q = 4p + 4q => p = 2q
        let (p, q) = (rat_int(2), rat_int(1));
        let j = weights4_regenerate(&p, &q, n, 10).unwrap();
        assert_eq!(j.coeff(5), Rat::zero());
        assert_eq!(
            j,
            family_jet(
                &FamilyTag::Monomial {
                    m: 4,
                    a: rat_int(1)
                },
                10
            )
            .unwrap()
        );
        assert!(j.is_exact());
    }

    #[test]
    fn regeneration_matches_type_ii() {
        // (p, q) = (1/(n-2), -1/(n-2)) regenerates 24 * TypeII with the
        // x^2, x^3 coefficients stripped; checked through order 8 and
        // beyond.
        let n = 6;
        let p = rat(1, 4);
        let q = rat(-1, 4);
        let j = weights4_regenerate(&p, &q, n, 12).unwrap();
        let t2 = family_jet(&FamilyTag::TypeII, 12)
            .unwrap()
            .scale(&rat_int(24));
        for k in 4..=12 {
            assert_eq!(j.coeff(k), t2.coeff(k), "k={k}");
        }
        assert_eq!(j.coeff(5), rat(1, 5)); // sigma from np + 2q = 5 sigma + 4(p+q)
    }
}
