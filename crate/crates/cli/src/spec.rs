//! Problem files: one JSON document describing a field, a permutation group,
//! a normal subgroup Σ, named modules and budgets.

use std::sync::Arc;

use hocoh::{Field, FieldSpec, FiniteGroup, GammaModule, GroupAlgebra, Matrix, NormalSubgroup, Permutation};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_Q_MAX: usize = 3;
pub const DEFAULT_P_MAX: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default)]
    pub name: String,
    pub field: String,
    pub generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub sigma: Vec<SigmaGenerator>,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
    #[serde(default)]
    pub budgets: Budgets,
}

/// A Σ generator: an index into `generators`, or an explicit permutation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SigmaGenerator {
    Index(usize),
    Permutation(Vec<usize>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Trivial,
    Regular,
    Coinduced,
    Sign,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    pub kind: ModuleKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_dim: Option<usize>,
    /// One row-major matrix of exact entries per group generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    #[serde(default = "default_q_max")]
    pub q_max: usize,
    #[serde(default = "default_p_max")]
    pub p_max: usize,
    #[serde(default = "default_order_cap")]
    pub order_cap: usize,
}

fn default_q_max() -> usize {
    DEFAULT_Q_MAX
}

fn default_p_max() -> usize {
    DEFAULT_P_MAX
}

fn default_order_cap() -> usize {
    hocoh::group::DEFAULT_ORDER_CAP
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            q_max: DEFAULT_Q_MAX,
            p_max: DEFAULT_P_MAX,
            order_cap: default_order_cap(),
        }
    }
}

impl ProblemSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn field_spec(&self) -> Result<FieldSpec, CliError> {
        self.field.parse().map_err(|e: hocoh::Error| invalid("$.field", e))
    }
}

fn invalid(path: impl Into<String>, message: impl ToString) -> CliError {
    CliError::Invalid {
        path: path.into(),
        message: message.to_string(),
    }
}

/// A validated problem over a concrete field.
#[derive(Clone, Debug)]
pub struct Problem<F: Field> {
    pub name: String,
    pub field: F,
    pub group: Arc<FiniteGroup>,
    pub sigma: NormalSubgroup,
    pub modules: Vec<(String, GammaModule<F>)>,
    pub budgets: Budgets,
}

impl<F: Field> Problem<F> {
    pub fn build(spec: &ProblemSpec, field: F) -> Result<Self, CliError> {
        let budgets = spec.budgets;
        if budgets.p_max > hocoh::les::MAX_DEGREE {
            return Err(invalid(
                "$.budgets.p_max",
                format!("p_max must be at most {}", hocoh::les::MAX_DEGREE),
            ));
        }
        if budgets.q_max == 0 {
            return Err(invalid("$.budgets.q_max", "q_max must be at least 1"));
        }
        let mut perms = Vec::with_capacity(spec.generators.len());
        for (i, g) in spec.generators.iter().enumerate() {
            let p = Permutation::new(g.clone()).map_err(|e| invalid(format!("$.generators[{i}]"), e))?;
            if let Some(first) = perms.first().map(|p: &Permutation| p.degree()) {
                if p.degree() != first {
                    return Err(invalid(
                        format!("$.generators[{i}]"),
                        format!("degree {} differs from degree {first} of the first generator", p.degree()),
                    ));
                }
            }
            perms.push(p);
        }
        let group =
            Arc::new(FiniteGroup::close_generators(&perms, budgets.order_cap).map_err(|e| invalid("$.generators", e))?);

        let mut sigma_idx = Vec::with_capacity(spec.sigma.len());
        for (i, s) in spec.sigma.iter().enumerate() {
            let path = format!("$.sigma[{i}]");
            let idx = match s {
                SigmaGenerator::Index(k) => *group
                    .generators()
                    .get(*k)
                    .ok_or_else(|| invalid(&path, format!("no generator with index {k}")))?,
                SigmaGenerator::Permutation(images) => {
                    let p = Permutation::new(images.clone()).map_err(|e| invalid(&path, e))?;
                    group
                        .index_of(&p)
                        .ok_or_else(|| invalid(&path, hocoh::Error::NotInGroup(images.clone())))?
                }
            };
            sigma_idx.push(idx);
        }
        let sigma = NormalSubgroup::closure(&group, &sigma_idx).map_err(|e| match e {
            hocoh::Error::NotNormal { gamma, sigma } => invalid(
                "$.sigma",
                format!(
                    "subgroup is not normal: conjugating {:?} by {:?} leaves it",
                    group.element(sigma).images(),
                    group.element(gamma).images()
                ),
            ),
            other => invalid("$.sigma", other),
        })?;

        let mut modules: Vec<(String, GammaModule<F>)> = Vec::with_capacity(spec.modules.len());
        for (i, m) in spec.modules.iter().enumerate() {
            let path = format!("$.modules[{i}]");
            if modules.iter().any(|(n, _)| n == &m.name) {
                return Err(invalid(format!("{path}.name"), format!("duplicate module name {:?}", m.name)));
            }
            let module = build_module(m, &group, &field, &path)?;
            modules.push((m.name.clone(), module));
        }
        Ok(Problem {
            name: spec.name.clone(),
            field,
            group,
            sigma,
            modules,
            budgets,
        })
    }

    pub fn module(&self, name: &str) -> Result<&GammaModule<F>, CliError> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| CliError::UnknownModule(name.to_string()))
    }
}

fn build_module<F: Field>(
    m: &ModuleSpec,
    group: &Arc<FiniteGroup>,
    field: &F,
    path: &str,
) -> Result<GammaModule<F>, CliError> {
    let require_dim = || m.dim.ok_or_else(|| invalid(format!("{path}.dim"), "missing dim"));
    Ok(match m.kind {
        ModuleKind::Trivial => GammaModule::trivial(group.clone(), field.clone(), require_dim()?),
        ModuleKind::Regular => GammaModule::regular(&GroupAlgebra::new(group.clone(), field.clone())),
        ModuleKind::Sign => GammaModule::sign(group.clone(), field.clone()),
        ModuleKind::Coinduced => {
            let base = m.base_dim.ok_or_else(|| invalid(format!("{path}.base_dim"), "missing base_dim"))?;
            GammaModule::coinduced(group.clone(), field.clone(), base)
        }
        ModuleKind::Explicit => {
            let dim = require_dim()?;
            let action = m
                .action
                .as_ref()
                .ok_or_else(|| invalid(format!("{path}.action"), "explicit modules need action matrices"))?;
            if action.len() != group.generators().len() {
                return Err(invalid(
                    format!("{path}.action"),
                    format!("{} matrices for {} generators", action.len(), group.generators().len()),
                ));
            }
            let mut mats = Vec::with_capacity(action.len());
            for (g, rows) in action.iter().enumerate() {
                let mpath = format!("{path}.action[{g}]");
                if rows.len() != dim {
                    return Err(invalid(&mpath, format!("{} rows, expected {dim}", rows.len())));
                }
                let mut data = Vec::with_capacity(dim * dim);
                for (r, row) in rows.iter().enumerate() {
                    if row.len() != dim {
                        return Err(invalid(format!("{mpath}[{r}]"), format!("{} entries, expected {dim}", row.len())));
                    }
                    for (c, cell) in row.iter().enumerate() {
                        data.push(field.parse(cell).map_err(|e| invalid(format!("{mpath}[{r}][{c}]"), e))?);
                    }
                }
                mats.push(Matrix::from_vec(field, dim, dim, data));
            }
            GammaModule::from_generators(group.clone(), field.clone(), dim, &mats)
                .map_err(|e| invalid(format!("{path}.action"), e))?
        }
    })
}
