//! The JSON instance document: parsing with strict field checking,
//! semantic validation with a field pointer, conversion to the library
//! types, and canonical emission.
//!
//! Matrices are lists of rows and act on column vectors of coordinates.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, FiniteAlgebra, ModuleRep, Side, Subalgebra};
use crate::comodule::DescentDatum;
use crate::error::{Error, Result};
use crate::field::{is_prime, Fp, MAX_MODULUS};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;
use crate::partial_action::{GlobalActionInstance, PartialAction};

pub type Rows = Vec<Vec<u64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub prime: u64,
    pub algebra: AlgebraDoc,
    pub group: GroupDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial_action: Option<PartialActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_action: Option<GlobalActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subring: Option<SubringDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub unit: Vec<u64>,
    /// `structure_constants[i][j]` is the coordinate vector of `b_i b_j`.
    pub structure_constants: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialActionDoc {
    pub idempotents: Rows,
    pub alpha_matrices: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalActionDoc {
    pub automorphism_matrices: Vec<Rows>,
    pub restriction_idempotent: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubringDoc {
    pub basis: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim: usize,
    pub side: Side,
    pub action_matrices: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent_matrices: Option<Vec<Rows>>,
}

/// A parsed and checked instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub pa: PartialAction,
    pub global: Option<(GlobalActionInstance, AlgebraElement)>,
    pub subring: Option<Subalgebra>,
    pub modules: Vec<(ModuleRep, Option<DescentDatum>)>,
}

fn json_error(e: serde_json::Error) -> Error {
    use serde_json::error::Category;
    let at = format!("line {} column {}", e.line(), e.column());
    match e.classify() {
        Category::Data => Error::semantic(at, e.to_string()),
        _ => Error::Syntax(e.to_string()),
    }
}

pub fn parse_instance(text: &str) -> Result<InstanceDocument> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.check()?;
    Ok(doc)
}

pub fn parse_subring(text: &str) -> Result<SubringDoc> {
    serde_json::from_str(text).map_err(json_error)
}

struct Checker {
    p: u64,
}

impl Checker {
    fn vector(&self, ptr: &str, v: &[u64], len: usize) -> Result<()> {
        if v.len() != len {
            return Err(Error::semantic(ptr, format!("expected {len} entries, found {}", v.len())));
        }
        if let Some(i) = v.iter().position(|&x| x >= self.p) {
            return Err(Error::semantic(format!("{ptr}/{i}"), format!("entry not reduced mod {}", self.p)));
        }
        Ok(())
    }

    fn matrix(&self, ptr: &str, m: &Rows, rows: usize, cols: usize) -> Result<()> {
        if m.len() != rows {
            return Err(Error::semantic(ptr, format!("expected {rows} rows, found {}", m.len())));
        }
        for (r, row) in m.iter().enumerate() {
            self.vector(&format!("{ptr}/{r}"), row, cols)?;
        }
        Ok(())
    }

    fn matrices(&self, ptr: &str, ms: &[Rows], count: usize, dim: usize) -> Result<()> {
        if ms.len() != count {
            return Err(Error::semantic(ptr, format!("expected {count} matrices, found {}", ms.len())));
        }
        for (k, m) in ms.iter().enumerate() {
            self.matrix(&format!("{ptr}/{k}"), m, dim, dim)?;
        }
        Ok(())
    }
}

impl InstanceDocument {
    /// Indices within declared dimensions, entries reduced, exactly one action.
    pub fn check(&self) -> Result<()> {
        if !(is_prime(self.prime) && self.prime < MAX_MODULUS) {
            return Err(Error::NotPrime(self.prime));
        }
        let c = Checker { p: self.prime };
        let n = self.algebra.dim;
        if n == 0 {
            return Err(Error::semantic("/algebra/dim", "dimension must be positive"));
        }
        c.vector("/algebra/unit", &self.algebra.unit, n)?;
        let sc = &self.algebra.structure_constants;
        if sc.len() != n {
            return Err(Error::semantic("/algebra/structure_constants", format!("expected {n} blocks")));
        }
        for (i, block) in sc.iter().enumerate() {
            c.matrix(&format!("/algebra/structure_constants/{i}"), block, n, n)?;
        }
        let g = self.group.order;
        if g == 0 || self.group.table.len() != g {
            return Err(Error::semantic("/group/table", format!("expected {g} rows")));
        }
        for (r, row) in self.group.table.iter().enumerate() {
            if row.len() != g {
                return Err(Error::semantic(format!("/group/table/{r}"), format!("expected {g} entries")));
            }
            if let Some(k) = row.iter().position(|&x| x >= g) {
                return Err(Error::semantic(format!("/group/table/{r}/{k}"), "index out of range"));
            }
        }
        match (&self.partial_action, &self.global_action) {
            (Some(pa), None) => {
                c.matrix("/partial_action/idempotents", &pa.idempotents, g, n)?;
                c.matrices("/partial_action/alpha_matrices", &pa.alpha_matrices, g, n)?;
            }
            (None, Some(ga)) => {
                c.matrices("/global_action/automorphism_matrices", &ga.automorphism_matrices, g, n)?;
                c.vector("/global_action/restriction_idempotent", &ga.restriction_idempotent, n)?;
            }
            (Some(_), Some(_)) => {
                return Err(Error::semantic("/", "both partial_action and global_action are present"));
            }
            (None, None) => return Err(Error::semantic("/", "one of partial_action or global_action is required")),
        }
        let (a_dim, _) = self.action_dims();
        if let Some(sub) = &self.subring {
            for (k, v) in sub.basis.iter().enumerate() {
                c.vector(&format!("/subring/basis/{k}"), v, a_dim.unwrap_or(n))?;
            }
        }
        for (k, m) in self.modules.iter().enumerate() {
            let ptr = format!("/modules/{k}");
            if m.side != Side::Right && m.descent_matrices.is_some() {
                return Err(Error::semantic(ptr, "descent data need a right module"));
            }
            if let Some(a_dim) = a_dim {
                c.matrices(&format!("{ptr}/action_matrices"), &m.action_matrices, a_dim, m.dim)?;
            }
            if let Some(dm) = &m.descent_matrices {
                c.matrices(&format!("{ptr}/descent_matrices"), dm, g, m.dim)?;
            }
        }
        Ok(())
    }

    /// The dimension of `A` when it is known without restricting, and the group order.
    fn action_dims(&self) -> (Option<usize>, usize) {
        let a = if self.partial_action.is_some() { Some(self.algebra.dim) } else { None };
        (a, self.group.order)
    }

    pub fn field(&self) -> Fp {
        Fp::new(self.prime).expect("checked prime")
    }

    /// Builds the library objects; a global action is restricted along its idempotent.
    pub fn build(&self) -> Result<Instance> {
        self.check()?;
        let f = self.field();
        let alg = FiniteAlgebra::new(self.prime, &self.algebra.structure_constants, &self.algebra.unit)?;
        let grp = FiniteGroup::from_table(&self.group.table)?;
        let to_matrix = |n: usize, rows: &Rows| Matrix::from_rows(f, n, rows);
        let (pa, global) = match (&self.partial_action, &self.global_action) {
            (Some(doc), _) => {
                let idem = doc.idempotents.iter().map(|v| AlgebraElement::from_vec(v.clone())).collect();
                let maps = doc.alpha_matrices.iter().map(|m| to_matrix(alg.dim(), m)).collect::<Result<_>>()?;
                (PartialAction::new(alg, grp, idem, maps)?, None)
            }
            (None, Some(doc)) => {
                let auto = doc.automorphism_matrices.iter().map(|m| to_matrix(alg.dim(), m)).collect::<Result<_>>()?;
                let ga = GlobalActionInstance::new(alg, grp, auto)?;
                let (_, pa) = ga.restrict(&doc.restriction_idempotent)?;
                let e = AlgebraElement::from_vec(doc.restriction_idempotent.clone());
                (pa, Some((ga, e)))
            }
            (None, None) => unreachable!("checked above"),
        };
        let a = pa.algebra();
        let n = a.dim();
        let subring = match &self.subring {
            Some(doc) => Some(subring_from_doc(a, doc)?),
            None => None,
        };
        let mut modules = Vec::new();
        for (k, m) in self.modules.iter().enumerate() {
            if m.action_matrices.len() != n {
                return Err(Error::semantic(format!("/modules/{k}/action_matrices"), format!("expected {n} matrices")));
            }
            let act = m.action_matrices.iter().map(|r| to_matrix(m.dim, r)).collect::<Result<_>>()?;
            let module = ModuleRep::new(m.dim, m.side, act)?;
            let datum = match &m.descent_matrices {
                Some(dm) => {
                    let maps = dm.iter().map(|r| to_matrix(m.dim, r)).collect::<Result<_>>()?;
                    Some(DescentDatum::new(module.clone(), maps))
                }
                None => None,
            };
            modules.push((module, datum));
        }
        Ok(Instance { pa, global, subring, modules })
    }

    /// The standalone document of a partial action.
    pub fn from_partial_action(pa: &PartialAction, subring: Option<&Subalgebra>) -> Self {
        let alg = pa.algebra();
        Self {
            prime: alg.p(),
            algebra: AlgebraDoc {
                dim: alg.dim(),
                unit: alg.unit().into_vec(),
                structure_constants: alg.structure_constants(),
            },
            group: group_doc(pa.group()),
            partial_action: Some(PartialActionDoc {
                idempotents: pa.idempotents().iter().map(|e| e.coeffs().to_vec()).collect(),
                alpha_matrices: pa.maps().iter().map(|m| m.to_rows()).collect(),
            }),
            global_action: None,
            subring: subring.map(|s| SubringDoc { basis: s.basis_matrix().to_rows() }),
            modules: Vec::new(),
        }
    }

    pub fn from_global_action(ga: &GlobalActionInstance, e: &[u64]) -> Self {
        Self {
            prime: ga.amb.p(),
            algebra: AlgebraDoc {
                dim: ga.amb.dim(),
                unit: ga.amb.unit().into_vec(),
                structure_constants: ga.amb.structure_constants(),
            },
            group: group_doc(&ga.grp),
            partial_action: None,
            global_action: Some(GlobalActionDoc {
                automorphism_matrices: ga.auto.iter().map(|m| m.to_rows()).collect(),
                restriction_idempotent: e.to_vec(),
            }),
            subring: None,
            modules: Vec::new(),
        }
    }

    pub fn with_module(mut self, dd: &DescentDatum) -> Self {
        self.modules.push(ModuleDoc {
            dim: dd.module.dim,
            side: dd.module.side,
            action_matrices: dd.module.act.iter().map(|m| m.to_rows()).collect(),
            descent_matrices: Some(dd.maps.iter().map(|m| m.to_rows()).collect()),
        });
        self
    }

    /// Canonical text: two-space indented JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

fn group_doc(grp: &FiniteGroup) -> GroupDoc {
    let g = grp.order();
    GroupDoc { order: g, table: (0..g).map(|a| (0..g).map(|b| grp.mul(a, b)).collect()).collect() }
}

pub fn subring_from_doc(alg: &FiniteAlgebra, doc: &SubringDoc) -> Result<Subalgebra> {
    if let Some(k) = doc.basis.iter().position(|v| v.len() != alg.dim()) {
        return Err(Error::semantic(format!("/subring/basis/{k}"), format!("expected {} entries", alg.dim())));
    }
    let m = Matrix::from_rows(alg.field(), alg.dim(), &doc.basis)?;
    Subalgebra::from_basis(alg, &m)
}

pub fn emit_instance(doc: &InstanceDocument) -> String {
    doc.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn shift_text() -> String {
        InstanceDocument::from_partial_action(&fixtures::shift(), None).to_text()
    }

    #[test]
    fn fixture_round_trip() {
        for fx in fixtures::all() {
            let text = InstanceDocument::from_partial_action(&fx.pa, None).to_text();
            let doc = parse_instance(&text).unwrap();
            assert_eq!(doc.to_text(), text);
            let inst = doc.build().unwrap();
            assert_eq!(inst.pa, fx.pa);
            assert!(inst.pa.validate().is_ok());
        }
    }

    #[test]
    fn composite_prime_is_rejected() {
        let text = shift_text().replacen("\"prime\": 2", "\"prime\": 4", 1);
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.code(), "modulus_not_prime");
        assert!(err.to_string().contains("modulus not prime"));
    }

    #[test]
    fn both_actions_rejected() {
        let mut doc = parse_instance(&shift_text()).unwrap();
        doc.global_action = Some(GlobalActionDoc { automorphism_matrices: vec![], restriction_idempotent: vec![1, 1] });
        assert!(matches!(doc.check(), Err(Error::Semantic { .. })));
    }

    #[test]
    fn unknown_field_rejected_with_position() {
        let text = shift_text().replacen("{", "{\n  \"extra\": 1,", 1);
        match parse_instance(&text) {
            Err(Error::Semantic { pointer, .. }) => assert!(pointer.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error() {
        assert!(matches!(parse_instance("{\"prime\": "), Err(Error::Syntax(_))));
    }

    #[test]
    fn unreduced_entry_points_at_field() {
        let mut doc = parse_instance(&shift_text()).unwrap();
        doc.partial_action.as_mut().unwrap().alpha_matrices[1][0][1] = 2;
        match doc.check() {
            Err(Error::Semantic { pointer, .. }) => assert_eq!(pointer, "/partial_action/alpha_matrices/1/0/1"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn global_document_restricts_to_shift() {
        let ga = fixtures::cyclic_shift_global();
        let text = InstanceDocument::from_global_action(&ga, &[1, 1, 0]).to_text();
        let inst = parse_instance(&text).unwrap().build().unwrap();
        assert_eq!(inst.pa, fixtures::shift());
    }

    #[test]
    fn modules_and_subring_round_trip() {
        let pa = fixtures::swap();
        let t = pa.invariants().unwrap();
        let dd = DescentDatum::regular(&pa);
        let doc = InstanceDocument::from_partial_action(&pa, Some(&t)).with_module(&dd);
        let text = doc.to_text();
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, doc);
        let inst = back.build().unwrap();
        assert_eq!(inst.subring.unwrap(), t);
        assert_eq!(inst.modules[0].1.as_ref().unwrap(), &dd);
    }
}
