//! Rational weight systems on variable tables and weighted decomposition.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::coeff::{Coeff, Rat};
use super::poly::Poly;
use super::vars::{VarId, VarTable};

/// Assigns a rational weight to every variable of a table. The weight of a
/// monomial is the dot product of its exponents with the weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    table: Arc<VarTable>,
    weights: Vec<Rat>,
}

impl Grading {
    pub fn new(table: &Arc<VarTable>, weights: Vec<Rat>) -> Self {
        assert_eq!(weights.len(), table.len(), "one weight per variable");
        Grading {
            table: table.clone(),
            weights,
        }
    }

    pub fn uniform(table: &Arc<VarTable>, w: Rat) -> Self {
        Grading::new(table, vec![w; table.len()])
    }

    pub fn weight_of_var(&self, v: VarId) -> &Rat {
        &self.weights[v]
    }

    pub fn set_weight(&mut self, v: VarId, w: Rat) {
        self.weights[v] = w;
    }

    pub fn weight_of_mono(&self, exps: &[u16]) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for (v, &k) in exps.iter().enumerate() {
            if k > 0 {
                acc += &self.weights[v] * Rat::from_integer(k.into());
            }
        }
        acc
    }
}

/// Splits `p` into weighted-homogeneous components keyed by weight. The
/// components always sum back to `p`.
pub fn weight_decompose<C: Coeff>(p: &Poly<C>, g: &Grading) -> BTreeMap<Rat, Poly<C>> {
    let mut out: BTreeMap<Rat, Poly<C>> = BTreeMap::new();
    for (exps, c) in p.terms() {
        let w = g.weight_of_mono(exps);
        let entry = out.entry(w).or_insert_with(|| Poly::zero(p.table()));
        *entry = entry
            .add(&Poly::monomial(p.table(), exps.clone(), c.clone()))
            .expect("same table");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::coeff::rat_int;

    #[test]
    fn unit_weights_split_by_degree() {
        let mut b = VarTable::builder();
        let x1 = b.real("x1");
        let t = b.build();
        let p = Poly::<Rat>::var(&t, x1)
            .add(&Poly::var_pow(&t, x1, 2))
            .unwrap();
        let g = Grading::uniform(&t, rat_int(1));
        let parts = weight_decompose(&p, &g);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&rat_int(1)], Poly::var(&t, x1));
        assert_eq!(parts[&rat_int(2)], Poly::var_pow(&t, x1, 2));
        // components sum back
        let mut sum = Poly::zero(&t);
        for q in parts.values() {
            sum = sum.add(q).unwrap();
        }
        assert_eq!(sum, p);
    }
}
