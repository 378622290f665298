//! Truncated Maclaurin series for the perturbation function, with the named
//! family generators, affine reparameterization, normalization, and
//! recentering.
//!
//! A jet of order D stores coefficients a_0..a_D of f(x) = sum a_k x^k +
//! O(x^{D+1}); `exact` marks jets of polynomials equal to their truncation,
//! for which recentering and nonzero shifts are meaningful.

use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::{CrError, CrResult};
use crate::ring::coeff::{rat_int, rat_pow, rat_to_string, Rat};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Jet {
    order: usize,
    coeffs: Vec<Rat>,
    exact: bool,
}

/// The classification families. TypeI(a) with a in {0,1,2,3} is degenerate:
/// it normalizes to the zero jet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilyTag {
    Zero,
    /// a * x^m with m >= 4.
    Monomial {
        m: usize,
        a: Rat,
    },
    /// (x+1)^a - a x - 1.
    TypeI {
        a: Rat,
    },
    /// e^x - x - 1.
    TypeII,
    /// ln(x+1) - x.
    TypeIII,
    /// (x+1) ln(x+1) - x.
    TypeIV,
    /// 2 (x+1)^2 ln(x+1) - (x+1)^2 + 1.
    TypeV,
    /// 6 (x+1)^3 ln(x+1) - 2 (x+1)^3 + 2.
    TypeVI,
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Zero => "Zero",
            FamilyTag::Monomial { .. } => "Monomial",
            FamilyTag::TypeI { .. } => "TypeI",
            FamilyTag::TypeII => "TypeII",
            FamilyTag::TypeIII => "TypeIII",
            FamilyTag::TypeIV => "TypeIV",
            FamilyTag::TypeV => "TypeV",
            FamilyTag::TypeVI => "TypeVI",
        }
    }

    /// TypeI with a in {0,1,2,3} reduces to the zero jet after normalization.
    pub fn is_degenerate(&self) -> bool {
        match self {
            FamilyTag::TypeI { a } => a.is_integer() && *a >= rat_int(0) && *a <= rat_int(3),
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            FamilyTag::Monomial { m, a } => {
                json!({"family": "Monomial", "m": m, "a": rat_to_string(a)})
            }
            FamilyTag::TypeI { a } => json!({"family": "TypeI", "a": rat_to_string(a)}),
            other => json!({ "family": other.name() }),
        }
    }
}

/// Record of the shift and weighted dilation applied by `normalize`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizationRecord {
    /// Coefficients a_0..a_3 removed by the cubic shift map.
    pub removed: [Rat; 4],
    /// Dilation f(x) -> c1 f(c2 x); identity when f^(4)(0) = 0.
    pub c1: Rat,
    pub c2: Rat,
    /// Sign of f^(4)(0) before the dilation (0 when absent).
    pub sign: i8,
}

impl NormalizationRecord {
    pub fn identity() -> Self {
        NormalizationRecord {
            removed: [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()],
            c1: Rat::one(),
            c2: Rat::one(),
            sign: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.removed.iter().all(|r| r.is_zero()) && self.c1.is_one() && self.c2.is_one()
    }
}

impl Jet {
    pub fn new(order: usize, coeffs: Vec<Rat>, exact: bool) -> CrResult<Self> {
        if coeffs.len() != order + 1 {
            return Err(CrError::Schema(format!(
                "jet of order {} needs {} coefficients, got {}",
                order,
                order + 1,
                coeffs.len()
            )));
        }
        Ok(Jet {
            order,
            coeffs,
            exact,
        })
    }

    pub fn zero(order: usize) -> Self {
        Jet {
            order,
            coeffs: vec![Rat::zero(); order + 1],
            exact: true,
        }
    }

    /// Exact jet of the polynomial with the given low-degree coefficients,
    /// padded with zeros up to `order`.
    pub fn poly(order: usize, coeffs: &[Rat]) -> CrResult<Self> {
        if coeffs.len() > order + 1 {
            return Err(CrError::OrderTooSmall(order, coeffs.len() - 1));
        }
        let mut c = coeffs.to_vec();
        c.resize(order + 1, Rat::zero());
        Jet::new(order, c, true)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree of the underlying polynomial for exact jets; highest stored
    /// nonzero index otherwise.
    pub fn top_nonzero(&self) -> Option<usize> {
        (0..=self.order).rev().find(|&k| !self.coeffs[k].is_zero())
    }

    /// Indices of all nonzero coefficients.
    pub fn support(&self) -> Vec<usize> {
        (0..=self.order)
            .filter(|&k| !self.coeffs[k].is_zero())
            .collect()
    }

    /// True when the jet is a*x^m for a single m (ignoring zero jets).
    pub fn monomial_form(&self) -> Option<(usize, Rat)> {
        let sup = self.support();
        if sup.len() == 1 {
            Some((sup[0], self.coeffs[sup[0]].clone()))
        } else {
            None
        }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order {
            let mut c = self.coeffs.clone();
            // Padding beyond the stored order is only valid for exact jets.
            if order > self.order {
                assert!(self.exact, "cannot extend a non-exact jet");
                c.resize(order + 1, Rat::zero());
            }
            return Jet {
                order,
                coeffs: c,
                exact: self.exact,
            };
        }
        let exact = self.exact && self.coeffs[order + 1..].iter().all(|c| c.is_zero());
        Jet {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
            exact,
        }
    }

    pub fn add(&self, o: &Jet) -> CrResult<Jet> {
        if self.order != o.order {
            return Err(CrError::OrderMismatch(self.order, o.order));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Jet {
            order: self.order,
            coeffs,
            exact: self.exact && o.exact,
        })
    }

    pub fn sub(&self, o: &Jet) -> CrResult<Jet> {
        self.add(&o.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c1: &Rat) -> Jet {
        Jet {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c1).collect(),
            exact: self.exact,
        }
    }

    /// Product with truncation at the common order. Exactness survives only
    /// when no true term is lost to truncation.
    pub fn mul(&self, o: &Jet) -> CrResult<Jet> {
        if self.order != o.order {
            return Err(CrError::OrderMismatch(self.order, o.order));
        }
        let mut coeffs = vec![Rat::zero(); self.order + 1];
        let mut overflow = false;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                if i + j <= self.order {
                    coeffs[i + j] += a * b;
                } else {
                    overflow = true;
                }
            }
        }
        Ok(Jet {
            order: self.order,
            coeffs,
            exact: self.exact && o.exact && !overflow,
        })
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Jet {
        if self.order == 0 {
            return Jet {
                order: 0,
                coeffs: vec![Rat::zero()],
                exact: self.exact,
            };
        }
        let coeffs = (1..=self.order)
            .map(|k| &self.coeffs[k] * rat_int(k as i64))
            .collect();
        Jet {
            order: self.order - 1,
            coeffs,
            exact: self.exact,
        }
    }

    /// Jet of f^(4) (order drops by four).
    pub fn fourth_derivative(&self) -> CrResult<Jet> {
        if self.order < 4 {
            return Err(CrError::OrderTooSmall(self.order, 4));
        }
        Ok(self.derivative().derivative().derivative().derivative())
    }

    /// Jet of x -> f(c2 x + b). Recentering (b != 0) requires exactness.
    pub fn compose_affine(&self, c2: &Rat, b: &Rat) -> CrResult<Jet> {
        if !b.is_zero() && !self.exact {
            return Err(CrError::NonExactJet);
        }
        if b.is_zero() {
            let coeffs = (0..=self.order)
                .map(|k| &self.coeffs[k] * rat_pow(c2, k as i64))
                .collect();
            return Ok(Jet {
                order: self.order,
                coeffs,
                exact: self.exact,
            });
        }
        // Exact polynomial: expand sum a_k (c2 x + b)^k by binomials.
        let mut coeffs = vec![Rat::zero(); self.order + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // (c2 x + b)^k = sum_j C(k,j) (c2 x)^j b^(k-j)
            let mut binom = Rat::one();
            for j in 0..=k {
                let term = a * &binom * rat_pow(c2, j as i64) * rat_pow(b, (k - j) as i64);
                coeffs[j] += term;
                // next binomial coefficient C(k, j+1)
                binom = binom * rat_int((k - j) as i64) / rat_int((j + 1) as i64);
            }
        }
        Ok(Jet {
            order: self.order,
            coeffs,
            exact: true,
        })
    }

    /// Jet of x -> f(x - x1) - f(-x1); the output has zero constant term.
    pub fn recenter(&self, x1: &Rat) -> CrResult<Jet> {
        let shifted = self.compose_affine(&Rat::one(), &-x1)?;
        let mut coeffs = shifted.coeffs;
        coeffs[0] = Rat::zero();
        Ok(Jet {
            order: self.order,
            coeffs,
            exact: shifted.exact,
        })
    }

    /// Removes the coefficients a_0..a_3 by the cubic shift map and, when
    /// f^(4)(0) is nonzero, applies the weighted dilation f -> c1 f(c2 x)
    /// with c2 = f^(4)(0) and c1 = c2^(-5), after which a_4 = 1/24.
    pub fn normalize(&self) -> CrResult<(Jet, NormalizationRecord)> {
        if self.order < 4 {
            return Err(CrError::OrderTooSmall(self.order, 4));
        }
        let mut coeffs = self.coeffs.clone();
        let removed = [
            std::mem::replace(&mut coeffs[0], Rat::zero()),
            std::mem::replace(&mut coeffs[1], Rat::zero()),
            std::mem::replace(&mut coeffs[2], Rat::zero()),
            std::mem::replace(&mut coeffs[3], Rat::zero()),
        ];
        let shifted = Jet {
            order: self.order,
            coeffs,
            exact: self.exact,
        };
        let lambda = shifted.coeff(4) * rat_int(24); // f^(4)(0)
        if lambda.is_zero() {
            let mut rec = NormalizationRecord::identity();
            rec.removed = removed;
            return Ok((shifted, rec));
        }
        let c1 = rat_pow(&lambda, -5);
        let out = shifted.compose_affine(&lambda, &Rat::zero())?.scale(&c1);
        let rec = NormalizationRecord {
            removed,
            c1,
            c2: lambda.clone(),
            sign: if lambda.is_negative() { -1 } else { 1 },
        };
        Ok((out, rec))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(rat_to_string).collect::<Vec<_>>(),
            "exact": self.exact,
        })
    }
}

/// Jet of ln(1+x): sum (-1)^(k+1) x^k / k.
fn log1p_jet(order: usize) -> Jet {
    let coeffs = (0..=order)
        .map(|k| {
            if k == 0 {
                Rat::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                crate::ring::coeff::rat(sign, k as i64)
            }
        })
        .collect();
    Jet {
        order,
        coeffs,
        exact: false,
    }
}

/// Exact Maclaurin coefficients of the named closed form, to the requested
/// order.
pub fn family_jet(tag: &FamilyTag, order: usize) -> CrResult<Jet> {
    if order < 4 {
        return Err(CrError::OrderTooSmall(order, 4));
    }
    let jet = match tag {
        FamilyTag::Zero => Jet::zero(order),
        FamilyTag::Monomial { m, a } => {
            if *m < 4 {
                return Err(CrError::InvalidParam(format!(
                    "monomial degree {} must be at least 4",
                    m
                )));
            }
            let mut coeffs = vec![Rat::zero(); order + 1];
            if *m <= order {
                coeffs[*m] = a.clone();
            }
            Jet {
                order,
                coeffs,
                exact: *m <= order,
            }
        }
        FamilyTag::TypeI { a } => {
            // (x+1)^a - a x - 1: coefficients C(a, k) for k >= 2.
            let mut coeffs = vec![Rat::zero(); order + 1];
            let mut binom = Rat::one(); // C(a, 0)
            for k in 0..=order {
                if k >= 2 {
                    coeffs[k] = binom.clone();
                }
                let next = &binom * (a - rat_int(k as i64)) / rat_int((k + 1) as i64);
                binom = next;
            }
            // Exact iff a is a nonnegative integer with degree <= order.
            let exact = a.is_integer() && !a.is_negative() && *a <= rat_int(order as i64);
            Jet {
                order,
                coeffs,
                exact,
            }
        }
        FamilyTag::TypeII => {
            // e^x - x - 1
            let mut coeffs = vec![Rat::zero(); order + 1];
            let mut fact = Rat::one();
            for (k, c) in coeffs.iter_mut().enumerate() {
                fact = if k == 0 {
                    Rat::one()
                } else {
                    fact / rat_int(k as i64)
                };
                if k >= 2 {
                    *c = fact.clone();
                }
            }
            Jet {
                order,
                coeffs,
                exact: false,
            }
        }
        FamilyTag::TypeIII => {
            let mut j = log1p_jet(order);
            j.coeffs[1] = Rat::zero(); // ln(1+x) - x
            j
        }
        FamilyTag::TypeIV => {
            // (x+1) ln(x+1) - x
            let l = log1p_jet(order);
            let one_plus_x = Jet::poly(order, &[Rat::one(), Rat::one()])?;
            let mut j = one_plus_x.mul(&l)?;
            j.coeffs[1] = Rat::zero();
            j.exact = false;
            j
        }
        FamilyTag::TypeV => {
            // 2 (x+1)^2 ln(x+1) - (x+1)^2 + 1
            let l = log1p_jet(order);
            let sq = Jet::poly(order, &[Rat::one(), rat_int(2), Rat::one()])?;
            let mut j = sq.mul(&l)?.scale(&rat_int(2));
            j = j.sub(&sq)?;
            j.coeffs[0] += Rat::one();
            j.exact = false;
            j
        }
        FamilyTag::TypeVI => {
            // 6 (x+1)^3 ln(x+1) - 2 (x+1)^3 + 2
            let l = log1p_jet(order);
            let cube = Jet::poly(order, &[Rat::one(), rat_int(3), rat_int(3), Rat::one()])?;
            let mut j = cube.mul(&l)?.scale(&rat_int(6));
            j = j.sub(&cube.scale(&rat_int(2)))?;
            j.coeffs[0] += rat_int(2);
            j.exact = false;
            j
        }
    };
    Ok(jet)
}

pub fn jet_from_json(v: &serde_json::Value) -> CrResult<Jet> {
    use crate::ring::coeff::rat_from_str;
    let obj = v
        .as_object()
        .ok_or_else(|| CrError::Schema("jet must be an object".into()))?;
    if let Some(fam) = obj.get("family") {
        let name = fam
            .as_str()
            .ok_or_else(|| CrError::Schema("family must be a string".into()))?;
        let order = obj
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| CrError::Schema("family jet needs an integer order".into()))?
            as usize;
        let get_rat = |key: &str| -> CrResult<Rat> {
            let s = obj
                .get(key)
                .and_then(|x| x.as_str())
                .ok_or_else(|| CrError::Schema(format!("family {name} needs \"{key}\"")))?;
            rat_from_str(s)
        };
        let tag = match name {
            "Zero" => FamilyTag::Zero,
            "Monomial" => FamilyTag::Monomial {
                m: obj
                    .get("m")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| CrError::Schema("Monomial needs integer m".into()))?
                    as usize,
                a: get_rat("a")?,
            },
            "TypeI" => FamilyTag::TypeI { a: get_rat("a")? },
            "TypeII" => FamilyTag::TypeII,
            "TypeIII" => FamilyTag::TypeIII,
            "TypeIV" => FamilyTag::TypeIV,
            "TypeV" => FamilyTag::TypeV,
            "TypeVI" => FamilyTag::TypeVI,
            other => return Err(CrError::Schema(format!("unknown family {other}"))),
        };
        return family_jet(&tag, order);
    }
    let order =
        obj.get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| CrError::Schema("jet needs an integer order".into()))? as usize;
    let coeffs = obj
        .get("coeffs")
        .and_then(|c| c.as_array())
        .ok_or_else(|| CrError::Schema("jet needs a coeffs array".into()))?
        .iter()
        .map(|c| {
            c.as_str()
                .ok_or_else(|| CrError::Schema("jet coefficients are \"p/q\" strings".into()))
                .and_then(rat_from_str)
        })
        .collect::<CrResult<Vec<_>>>()?;
    let exact = obj.get("exact").and_then(|e| e.as_bool()).unwrap_or(false);
    Jet::new(order, coeffs, exact)
}
