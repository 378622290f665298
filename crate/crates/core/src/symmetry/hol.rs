//! The certified symmetry basis of a single-block model: the always-tangent
//! basis plus the case-dependent extra fields, each verified by the
//! tangency check before it is returned.

use crate::classify::recognize_family;
use crate::error::{CrError, CrResult};
use crate::hypersurface::HSModel;
use crate::jet::{family_jet, FamilyTag};
use num_traits::Zero;

use super::field::{catalog_field, f_basis, g_basis, CatalogName, HoloField};
use super::tangency::{tangency_check, Tangency};

/// The basis of hol(M, 0) for a single-block model with n > 4 whose jet has
/// no constant or linear part. Extra fields beyond the common basis are
/// attached only when the jet is exactly the zero jet, a monomial, or one
/// of the family representatives; scaling-equivalent jets keep the common
/// basis (their extra field is a pushforward that is not constructed here).
/// Every returned field is verified tangent; the second component is the
/// count of returned fields.
pub fn hol_basis(m: &HSModel) -> CrResult<(Vec<(String, HoloField)>, usize)> {
    if !m.is_single_block() {
        return Err(CrError::InvalidParam(
            "the symmetry basis is computed for single-block models".into(),
        ));
    }
    let n = m.n();
    if n < 5 {
        return Err(CrError::InvalidParam(
            "the classification needs n > 4; lower dimensions are exceptional".into(),
        ));
    }
    let jet = &m.blocks()[0].jet;
    if !jet.coeff(0).is_zero() || !jet.coeff(1).is_zero() {
        return Err(CrError::Unnormalized(
            "the jet must have no constant or linear part".into(),
        ));
    }

    let mut fields: Vec<(String, HoloField)>;
    if jet.is_zero() {
        fields = g_basis(m)?;
    } else if let Some((deg, a)) = jet.monomial_form() {
        fields = f_basis(m)?;
        if deg == 4 {
            for name in [CatalogName::U0m(4), CatalogName::XHat(a)] {
                fields.push((name.label(n), catalog_field(m, &name)?));
            }
        } else if deg >= 5 {
            let name = CatalogName::U0m(deg);
            fields.push((name.label(n), catalog_field(m, &name)?));
        } else {
            return Err(CrError::Unnormalized(format!(
                "monomial of degree {deg} cannot define a perturbation",
            )));
        }
    } else {
        fields = f_basis(m)?;
        if let Some(tag) = exact_family_match(m)? {
            let name = CatalogName::Vf(tag);
            fields.push((name.label(n), catalog_field(m, &name)?));
        }
    }

    for (name, f) in &fields {
        let verdict = tangency_check(f, m, None)?;
        if let Tangency::Fails { .. } = verdict {
            return Err(CrError::CertificationMismatch(format!(
                "{name}: {:?}",
                verdict
            )));
        }
    }
    let dim = fields.len();
    Ok((fields, dim))
}

/// The family tag when the model's jet coincides coefficient-for-
/// coefficient with a family representative (not merely up to scaling).
fn exact_family_match(m: &HSModel) -> CrResult<Option<FamilyTag>> {
    let jet = &m.blocks()[0].jet;
    let tag = match recognize_family(jet) {
        Ok(tag) => tag,
        Err(_) => return Ok(None),
    };
    match tag {
        FamilyTag::TypeI { .. }
        | FamilyTag::TypeII
        | FamilyTag::TypeIII
        | FamilyTag::TypeIV
        | FamilyTag::TypeV
        | FamilyTag::TypeVI => {
            if tag.is_degenerate() {
                return Ok(None);
            }
            let reference = family_jet(&tag, jet.order())?;
            Ok(if reference == *jet { Some(tag) } else { None })
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use crate::ring::coeff::rat_int;

    #[test]
    fn dimensions_by_case() {
        let n = 5;
        // f = 0: the full model algebra
        let m = HSModel::model_m0(n).unwrap();
        let (fields, dim) = hol_basis(&m).unwrap();
        assert_eq!(dim, 14);
        assert_eq!(fields.len(), 14);
        // f = x^4
        let f = family_jet(
            &FamilyTag::Monomial {
                m: 4,
                a: rat_int(1),
            },
            4,
        )
        .unwrap();
        let m = HSModel::single_block(n, 1, f).unwrap();
        assert_eq!(hol_basis(&m).unwrap().1, 13);
        // f = x^5
        let f = family_jet(
            &FamilyTag::Monomial {
                m: 5,
                a: rat_int(1),
            },
            5,
        )
        .unwrap();
        let m = HSModel::single_block(n, 1, f).unwrap();
        assert_eq!(hol_basis(&m).unwrap().1, 12);
        // generic: x^4 + x^6
        let f = Jet::poly(
            16,
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
        let m = HSModel::single_block(n, 1, f).unwrap();
        assert_eq!(hol_basis(&m).unwrap().1, 11);
    }

    #[test]
    fn family_representative_gains_extra_field() {
        let n = 5;
        let f = family_jet(&FamilyTag::TypeII, 16).unwrap();
        let m = HSModel::single_block(n, 1, f).unwrap();
        let (fields, dim) = hol_basis(&m).unwrap();
        assert_eq!(dim, 12);
        assert!(fields.iter().any(|(name, _)| name.contains("V_f")));
    }

    #[test]
    fn low_dimension_refused() {
        let m = HSModel::model_m0(4).unwrap();
        assert!(hol_basis(&m).is_err());
    }

    #[test]
    fn unnormalized_jet_refused() {
        let f = Jet::poly(6, &[rat_int(1)]).unwrap();
        let m = HSModel::single_block(5, 1, f).unwrap();
        assert!(hol_basis(&m).is_err());
    }
}
