//! Variable tables: ordered variables with kind tags and the pairings
//! z = x + i*y (realification) and z <-> zbar (conjugation).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CrError, CrResult};

pub type VarId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarKind {
    Real,
    Holo,
    AntiHolo,
}

#[derive(Clone, Debug)]
pub struct VarInfo {
    pub name: String,
    pub kind: VarKind,
    /// Holo <-> antiholo partner.
    pub conj: Option<VarId>,
    /// For holo/antiholo variables: the (re, im) pair.
    pub real_pair: Option<(VarId, VarId)>,
}

#[derive(Debug)]
pub struct VarTable {
    vars: Vec<VarInfo>,
    by_name: BTreeMap<String, VarId>,
}

impl Eq for VarTable {}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.vars.len() == other.vars.len()
            && self
                .vars
                .iter()
                .zip(&other.vars)
                .all(|(a, b)| a.name == b.name && a.kind == b.kind)
    }
}

impl VarTable {
    pub fn builder() -> VarTableBuilder {
        VarTableBuilder { vars: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn info(&self, v: VarId) -> &VarInfo {
        &self.vars[v]
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.vars[v].name
    }

    pub fn kind(&self, v: VarId) -> VarKind {
        self.vars[v].kind
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn lookup(&self, name: &str) -> CrResult<VarId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| CrError::UnknownVariable(name.to_string()))
    }

    pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }
}

pub struct VarTableBuilder {
    vars: Vec<VarInfo>,
}

impl VarTableBuilder {
    pub fn real(&mut self, name: &str) -> VarId {
        let id = self.vars.len();
        self.vars.push(VarInfo {
            name: name.to_string(),
            kind: VarKind::Real,
            conj: None,
            real_pair: None,
        });
        id
    }

    /// Adds a holomorphic variable, its conjugate `<name>bar`, and the real
    /// pair. Returns (holo, antiholo, re, im).
    pub fn complex(
        &mut self,
        name: &str,
        re_name: &str,
        im_name: &str,
    ) -> (VarId, VarId, VarId, VarId) {
        let h = self.vars.len();
        self.vars.push(VarInfo {
            name: name.to_string(),
            kind: VarKind::Holo,
            conj: None,
            real_pair: None,
        });
        let a = self.vars.len();
        self.vars.push(VarInfo {
            name: format!("{name}bar"),
            kind: VarKind::AntiHolo,
            conj: Some(h),
            real_pair: None,
        });
        self.vars[h].conj = Some(a);
        let re = self.real(re_name);
        let im = self.real(im_name);
        self.vars[h].real_pair = Some((re, im));
        self.vars[a].real_pair = Some((re, im));
        (h, a, re, im)
    }

    pub fn build(self) -> Arc<VarTable> {
        let by_name = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
        Arc::new(VarTable {
            vars: self.vars,
            by_name,
        })
    }
}
