use std::fmt;
use std::path::Path;

use hardy_lambda::cpoly::CPolynomial;
use hardy_lambda::duality::Functional;
use hardy_lambda::grid::UnitGrid;
use hardy_lambda::hardy::{BoundaryForm, NodeSet};
use hardy_lambda::C64;
use serde::Deserialize;

/// Complex number as an `[re, im]` pair.
pub type Pair = [f64; 2];

pub fn to_c(p: &Pair) -> C64 {
    C64::new(p[0], p[1])
}

pub fn to_pair(z: &C64) -> Pair {
    [z.re, z.im]
}

pub fn to_pairs(zs: &[C64]) -> Vec<Pair> {
    zs.iter().map(to_pair).collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub beta: Vec<Pair>,
    #[serde(default)]
    pub c: Option<Vec<Pair>>,
    #[serde(default)]
    pub form: Option<FormInput>,
    #[serde(default)]
    pub options: FileOptions,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormInput {
    #[serde(default)]
    pub ell: usize,
    #[serde(default)]
    pub w_zeros: Vec<Pair>,
    pub q: Vec<Pair>,
    /// Scale; normalized to unit norm when omitted.
    #[serde(default, rename = "A")]
    pub scale: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub deg: Option<usize>,
    pub seed: Option<u64>,
}

/// Input problem: file parse or content validation failure.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn check_finite(field: &str, pairs: &[Pair]) -> Result<(), InputError> {
    for (i, p) in pairs.iter().enumerate() {
        if !p[0].is_finite() || !p[1].is_finite() {
            return Err(InputError(format!("{field}[{i}] is not finite")));
        }
    }
    Ok(())
}

pub struct Problem {
    pub file: ProblemFile,
    pub nodes: NodeSet<f64>,
}

impl Problem {
    pub fn load(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| InputError(format!("{}: {}", path.display(), e.0)))
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let file: ProblemFile = serde_json::from_str(text).map_err(|e| InputError(e.to_string()))?;
        check_finite("beta", &file.beta)?;
        let nodes = NodeSet::new(file.beta.iter().map(to_c).collect()).map_err(|e| InputError(e.to_string()))?;
        let n = nodes.len();
        if let Some(c) = &file.c {
            check_finite("c", c)?;
            if c.len() != n {
                return Err(InputError(format!("c has {} entries, beta has {n}", c.len())));
            }
        }
        if let Some(form) = &file.form {
            check_finite("form.q", &form.q)?;
            check_finite("form.w_zeros", &form.w_zeros)?;
        }
        Ok(Self { file, nodes })
    }

    pub fn functional(&self) -> Result<Functional<f64>, InputError> {
        let c = self.file.c.as_ref().ok_or_else(|| InputError("missing field `c`".into()))?;
        Functional::new(self.nodes.clone(), c.iter().map(to_c).collect()).map_err(|e| InputError(format!("c: {e}")))
    }

    pub fn has_functional(&self) -> bool {
        self.file.c.is_some()
    }

    pub fn form(&self, circle_tol: f64) -> Result<BoundaryForm<f64>, InputError> {
        let input = self.file.form.as_ref().ok_or_else(|| InputError("missing field `form`".into()))?;
        let q = CPolynomial::new(input.q.iter().map(to_c).collect());
        let w: Vec<C64> = input.w_zeros.iter().map(to_c).collect();
        let nodes = self.nodes.clone();
        let built = match input.scale {
            Some(a) => BoundaryForm::with_scale(nodes, input.ell, w, q, a, circle_tol),
            None => BoundaryForm::new(nodes, input.ell, w, q),
        };
        built.map_err(|e| InputError(format!("form: {e}")))
    }
}

/// Settings after merging command-line flags over file options over defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub grid: UnitGrid,
    pub tol: f64,
    pub deg: usize,
    pub seed: u64,
}
