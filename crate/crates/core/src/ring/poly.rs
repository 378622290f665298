//! Sparse exact multivariate polynomials over a shared variable table.
//!
//! The representation is canonical: no zero coefficients are stored, so two
//! equal polynomials compare equal structurally. Serialization orders terms
//! by graded lexicographic order over the table's variable order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::coeff::{rat_to_string, Coeff, GaussRat, Rat};
use super::vars::{VarId, VarKind, VarTable};
use crate::error::{CrError, CrResult};

pub type Exps = Vec<u16>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Coeff> {
    table: Arc<VarTable>,
    terms: BTreeMap<Exps, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Poly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: C) -> Self {
        let mut p = Poly::zero(table);
        if !c.c_is_zero() {
            p.terms.insert(vec![0; table.len()], c);
        }
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Poly::constant(table, C::c_one())
    }

    pub fn var(table: &Arc<VarTable>, v: VarId) -> Self {
        Poly::var_pow(table, v, 1)
    }

    pub fn var_pow(table: &Arc<VarTable>, v: VarId, e: u16) -> Self {
        let mut exps = vec![0u16; table.len()];
        exps[v] = e;
        Poly::monomial(table, exps, C::c_one())
    }

    pub fn monomial(table: &Arc<VarTable>, exps: Exps, c: C) -> Self {
        assert_eq!(exps.len(), table.len(), "exponent vector length");
        let mut p = Poly::zero(table);
        if !c.c_is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u16]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::c_zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.table.len()])
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: VarId) -> usize {
        self.terms.keys().map(|e| e[v] as usize).max().unwrap_or(0)
    }

    fn check_table(&self, o: &Self) -> CrResult<()> {
        if VarTable::same_table(&self.table, &o.table) {
            Ok(())
        } else {
            Err(CrError::TableMismatch)
        }
    }

    fn insert_term(terms: &mut BTreeMap<Exps, C>, exps: Exps, c: C) {
        if c.c_is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().plus(&c);
                if s.c_is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> CrResult<Self> {
        self.check_table(o)?;
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        Ok(Poly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn sub(&self, o: &Self) -> CrResult<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.negate()))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> CrResult<Self> {
        self.check_table(o)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let exps: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert_term(&mut terms, exps, ca.times(cb));
            }
        }
        Ok(Poly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.c_is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.times(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one(&self.table);
        for _ in 0..e {
            acc = acc.mul(self).expect("same table");
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn differentiate(&self, v: VarId) -> CrResult<Self> {
        if v >= self.table.len() {
            return Err(CrError::UnknownVariable(format!("#{v}")));
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[v];
            if k == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[v] = k - 1;
            let factor = C::from_rat(&Rat::from_integer(num_bigint::BigInt::from(k)));
            Self::insert_term(&mut terms, exps, c.times(&factor));
        }
        Ok(Poly {
            table: self.table.clone(),
            terms,
        })
    }

    /// Simultaneous substitution of polynomials for variables. Unbound
    /// variables stay themselves. Evaluation at a point is the special case
    /// of constant bindings.
    pub fn substitute(&self, bindings: &[(VarId, Poly<C>)]) -> CrResult<Self> {
        for (v, p) in bindings {
            if *v >= self.table.len() {
                return Err(CrError::UnknownVariable(format!("#{v}")));
            }
            self.check_table(p)?;
        }
        let bound: BTreeMap<VarId, &Poly<C>> = bindings.iter().map(|(v, p)| (*v, p)).collect();
        // Cache powers of each binding.
        let mut powers: BTreeMap<VarId, Vec<Poly<C>>> = BTreeMap::new();
        let mut out = Poly::zero(&self.table);
        for (e, c) in &self.terms {
            let mut residual = e.clone();
            let mut factors: Vec<(VarId, u16)> = Vec::new();
            for (&v, _) in &bound {
                if e[v] > 0 {
                    factors.push((v, e[v]));
                    residual[v] = 0;
                }
            }
            let mut acc = Poly::monomial(&self.table, residual, c.clone());
            for (v, k) in factors {
                let cache = powers
                    .entry(v)
                    .or_insert_with(|| vec![Poly::one(&self.table)]);
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap().mul(bound[&v]).expect("same table");
                    cache.push(next);
                }
                acc = acc.mul(&cache[k as usize])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Evaluate with every variable bound to a scalar.
    pub fn eval(&self, point: &[C]) -> CrResult<C> {
        if point.len() != self.table.len() {
            return Err(CrError::DimensionMismatch(format!(
                "point has {} coordinates, table has {} variables",
                point.len(),
                self.table.len()
            )));
        }
        let mut acc = C::c_zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.times(&point[v]);
                }
            }
            acc = acc.plus(&term);
        }
        Ok(acc)
    }

    pub fn map_coeff<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = f(c);
            if !d.c_is_zero() {
                terms.insert(e.clone(), d);
            }
        }
        Poly {
            table: self.table.clone(),
            terms,
        }
    }

    /// Leading term under graded-lex (highest degree, then lex-largest
    /// exponent vector).
    pub fn leading_term(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().max_by(|(ea, _), (eb, _)| {
            let da: usize = ea.iter().map(|&x| x as usize).sum();
            let db: usize = eb.iter().map(|&x| x as usize).sum();
            da.cmp(&db).then_with(|| ea.cmp(eb))
        })
    }

    /// First term in presentation order (lowest degree; within a degree,
    /// lex-larger exponent vectors first); handy as a witness monomial.
    pub fn smallest_term(&self) -> Option<(&Exps, &C)> {
        self.terms.iter().min_by(|(ea, _), (eb, _)| {
            let da: usize = ea.iter().map(|&x| x as usize).sum();
            let db: usize = eb.iter().map(|&x| x as usize).sum();
            da.cmp(&db).then_with(|| eb.cmp(ea))
        })
    }

    /// Drops all terms of total degree greater than `d`.
    pub fn truncate_degree(&self, d: usize) -> Self {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact division; errors unless `self = q * d` exactly.
    pub fn div_exact(&self, d: &Self) -> CrResult<Self> {
        self.check_table(d)?;
        if d.is_zero() {
            return Err(CrError::InexactDivision);
        }
        let (dexps, dc) = d.leading_term().expect("nonzero divisor");
        let dinv = dc.inv().ok_or(CrError::InexactDivision)?;
        let dexps = dexps.clone();
        let mut rem = self.clone();
        let mut quo = Poly::zero(&self.table);
        while !rem.is_zero() {
            let (rexps, rc) = {
                let (e, c) = rem.leading_term().unwrap();
                (e.clone(), c.clone())
            };
            if rexps.iter().zip(&dexps).any(|(r, d)| r < d) {
                return Err(CrError::InexactDivision);
            }
            let qexps: Exps = rexps.iter().zip(&dexps).map(|(r, d)| r - d).collect();
            let qc = rc.times(&dinv);
            let qterm = Poly::monomial(&self.table, qexps, qc);
            rem = rem.sub(&qterm.mul(d)?)?;
            quo = quo.add(&qterm)?;
        }
        Ok(quo)
    }

    /// Terms in graded-lex presentation order: ascending total degree, and
    /// within a degree the lex-larger exponent vector (leading variables)
    /// first.
    pub fn sorted_terms(&self) -> Vec<(Exps, C)> {
        let mut v: Vec<(Exps, C)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        v.sort_by(|(ea, _), (eb, _)| {
            let da: usize = ea.iter().map(|&x| x as usize).sum();
            let db: usize = eb.iter().map(|&x| x as usize).sum();
            da.cmp(&db).then_with(|| eb.cmp(ea))
        });
        v
    }
}

impl Poly<GaussRat> {
    /// Splits into real and imaginary parts after substituting the real
    /// pairings z = x + i*y (and zbar = x - i*y) for every non-real variable.
    /// Errors if some non-real variable has no pairing.
    pub fn realify(&self) -> CrResult<(Poly<Rat>, Poly<Rat>)> {
        let table = self.table.clone();
        let mut bindings: Vec<(VarId, Poly<GaussRat>)> = Vec::new();
        let mut used: Vec<VarId> = Vec::new();
        for (e, _) in &self.terms {
            for (v, &k) in e.iter().enumerate() {
                if k > 0 && !used.contains(&v) {
                    used.push(v);
                }
            }
        }
        for v in used {
            match table.kind(v) {
                VarKind::Real => {}
                kind => {
                    let (re, im) = table
                        .info(v)
                        .real_pair
                        .ok_or_else(|| CrError::UnpairedVariable(table.name(v).to_string()))?;
                    let sign = if kind == VarKind::Holo {
                        GaussRat::i()
                    } else {
                        GaussRat::i().negate()
                    };
                    let repl = Poly::var(&table, re)
                        .add(&Poly::var(&table, im).scale(&sign))
                        .expect("same table");
                    bindings.push((v, repl));
                }
            }
        }
        let real_form = self.substitute(&bindings)?;
        let re = real_form.map_coeff(|c| c.re.clone());
        let im = real_form.map_coeff(|c| c.im.clone());
        Ok((re, im))
    }

    /// Real part as a rational polynomial; all variables must already be real.
    pub fn real_part(&self) -> Poly<Rat> {
        self.map_coeff(|c| c.re.clone())
    }
}

impl Poly<Rat> {
    pub fn to_gauss(&self) -> Poly<GaussRat> {
        self.map_coeff(|c| GaussRat::real(c.clone()))
    }
}

fn fmt_mono(table: &VarTable, exps: &[u16]) -> String {
    let mut parts = Vec::new();
    for (v, &k) in exps.iter().enumerate() {
        if k == 1 {
            parts.push(table.name(v).to_string());
        } else if k > 1 {
            parts.push(format!("{}^{}", table.name(v), k));
        }
    }
    parts.join("*")
}

impl<C: Coeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let m = fmt_mono(&self.table, &exps);
            if m.is_empty() {
                write!(f, "{c}")?;
            } else if c == C::c_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// JSON value for a polynomial: graded-lex sorted list of terms.
pub fn poly_to_json_rat(p: &Poly<Rat>) -> serde_json::Value {
    serde_json::Value::Array(
        p.sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "coeff": rat_to_string(&c),
                    "exps": e,
                })
            })
            .collect(),
    )
}

pub fn poly_to_json_gauss(p: &Poly<GaussRat>) -> serde_json::Value {
    serde_json::Value::Array(
        p.sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let coeff = if c.is_real() {
                    serde_json::Value::String(rat_to_string(&c.re))
                } else {
                    serde_json::json!({ "re": rat_to_string(&c.re), "im": rat_to_string(&c.im) })
                };
                serde_json::json!({ "coeff": coeff, "exps": e })
            })
            .collect(),
    )
}
