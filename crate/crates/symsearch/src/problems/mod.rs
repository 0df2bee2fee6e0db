//! Problem families: builders, verifiers, symmetry catalogues and
//! certificate formats for magic squares, progression-free colourings and
//! graceful labellings.

pub mod graceful;
pub mod magic;
pub mod vdw;

use crate::assignment::Assignment;
use crate::csp::Problem;
use crate::error::{Error, Result};
use crate::symmetry::{close_group, Symmetry, ValuePerm};

pub use graceful::{build_graceful, graceful_symmetries, verify_graceful, GracefulSpec, Graph};
pub use magic::{build_magic, magic_symmetries, verify_magic, MagicSpec};
pub use vdw::{build_vdw, vdw_symmetries, verify_vdw, VdwSpec};

/// Verdict of a family verifier: a certificate is accepted, or rejected with
/// a human-readable reason naming the first violation found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Accepted,
    Rejected { reason: String },
}

impl Verification {
    pub fn rejected(reason: impl Into<String>) -> Self {
        Self::Rejected { reason: reason.into() }
    }

    pub fn is_accepted(&self) -> bool {
        matches!(self, Self::Accepted)
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Self::Accepted => None,
            Self::Rejected { reason } => Some(reason),
        }
    }
}

/// An ordered name-to-symmetry catalogue for one problem instance.
#[derive(Debug, Clone, Default)]
pub struct SymmetryCatalog {
    entries: Vec<(String, Symmetry)>,
}

impl SymmetryCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, sym: Symmetry) {
        self.entries.push((name.into(), sym));
    }

    pub fn get(&self, name: &str) -> Option<&Symmetry> {
        self.entries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, sym)| sym)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Symmetry)> {
        self.entries.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One concrete instance of a shipped problem family, bundling the builder,
/// the symmetry catalogue, the verifier and the certificate format behind a
/// single surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProblemModel {
    Magic(MagicSpec),
    Vdw(VdwSpec),
    Graceful(GracefulSpec),
}

impl ProblemModel {
    pub fn build(&self) -> Problem {
        match self {
            Self::Magic(spec) => build_magic(spec),
            Self::Vdw(spec) => build_vdw(spec),
            Self::Graceful(spec) => build_graceful(spec.graph()),
        }
    }

    pub fn catalog(&self) -> SymmetryCatalog {
        match self {
            Self::Magic(spec) => magic_symmetries(spec),
            Self::Vdw(spec) => vdw_symmetries(spec),
            Self::Graceful(spec) => graceful_symmetries(spec),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Self::Magic(spec) => spec.cell_count(),
            Self::Vdw(spec) => spec.n(),
            Self::Graceful(spec) => spec.graph().vertex_count(),
        }
    }

    pub fn universe(&self) -> Vec<i64> {
        match self {
            Self::Magic(spec) => (1..=spec.cell_count() as i64).collect(),
            Self::Vdw(spec) => (0..spec.k() as i64).collect(),
            Self::Graceful(spec) => (0..=spec.graph().edge_count() as i64).collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Self::Magic(spec) => format!("magic:{}", spec.n()),
            Self::Vdw(spec) => format!("vdw:{},{},{}", spec.n(), spec.k(), spec.l()),
            Self::Graceful(spec) => format!("graceful:{}", spec.tag()),
        }
    }

    /// The group used when breaking symmetry on this instance: the eight
    /// spatial square symmetries for magic squares (the value reflection is
    /// catalogued for internal-symmetry work, not for breaking), and the
    /// closure of the whole catalogue for the other families.
    pub fn break_group(&self) -> Result<Vec<Symmetry>> {
        let catalog = self.catalog();
        let generators: Vec<Symmetry> = match self {
            Self::Magic(_) => catalog
                .iter()
                .filter(|(name, _)| magic::SPATIAL_NAMES.contains(name))
                .map(|(_, sym)| sym.clone())
                .collect(),
            _ => catalog.iter().map(|(_, sym)| sym.clone()).collect(),
        };
        close_group(&generators)
    }

    /// Resolves a symmetry name for this instance: a catalogue entry, a
    /// parameterised `colorswap:<p0-p1-...>`, or a `+`-separated composite
    /// of such parts (`a+b` composes as `a` after `b`).
    pub fn resolve_symmetry(&self, name: &str) -> Result<Symmetry> {
        let mut composed: Option<Symmetry> = None;
        for part in name.split('+') {
            let part = part.trim();
            let sym = self.resolve_single(part)?;
            composed = Some(match composed {
                None => sym,
                Some(acc) => acc.compose(&sym)?,
            });
        }
        composed.ok_or_else(|| Error::UnknownSymmetry(name.into()))
    }

    fn resolve_single(&self, name: &str) -> Result<Symmetry> {
        if name.is_empty() {
            return Err(Error::UnknownSymmetry(name.into()));
        }
        if let Some(sym) = self.catalog().get(name) {
            return Ok(sym.clone());
        }
        if let Some(perm) = name.strip_prefix("colorswap:") {
            let Self::Vdw(spec) = self else {
                return Err(Error::UnknownSymmetry(format!(
                    "{name} (colour permutations apply to vdw problems only)"
                )));
            };
            let images = perm
                .split('-')
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::MalformedSymmetry(format!("bad colour `{tok}`")))
                })
                .collect::<Result<Vec<i64>>>()?;
            if images.len() != spec.k() {
                return Err(Error::MalformedSymmetry(format!(
                    "colorswap lists {} colours, expected {}",
                    images.len(),
                    spec.k()
                )));
            }
            let val_perm = ValuePerm::new(self.universe(), images)?;
            return Ok(Symmetry::new(
                crate::symmetry::VarPerm::identity(self.arity()),
                val_perm,
            ));
        }
        Err(Error::UnknownSymmetry(name.into()))
    }

    /// Family verifier over a raw value row (labels / colours / entries in
    /// variable order).
    pub fn verify_values(&self, values: &[i64]) -> Result<Verification> {
        match self {
            Self::Magic(spec) => verify_magic(spec, values),
            Self::Vdw(spec) => verify_vdw(spec, values),
            Self::Graceful(spec) => verify_graceful(spec.graph(), values),
        }
    }

    /// Renders a total assignment in this family's certificate format.
    pub fn write_certificate(&self, a: &Assignment) -> Result<String> {
        let values = a.values()?;
        match self {
            Self::Magic(spec) => magic::write_certificate(spec, &values),
            Self::Vdw(spec) => vdw::write_certificate(spec, &values),
            Self::Graceful(spec) => graceful::write_certificate(spec, &values),
        }
    }

    /// Parses this family's certificate format into a value row.
    pub fn read_certificate(&self, text: &str) -> Result<Vec<i64>> {
        match self {
            Self::Magic(spec) => magic::read_certificate(spec, text),
            Self::Vdw(spec) => vdw::read_certificate(spec, text),
            Self::Graceful(spec) => graceful::read_certificate(spec, text),
        }
    }

    /// Carries a symmetry of this instance to another instance of the same
    /// family, per the family's template rule.
    pub fn lift_symmetry(&self, sigma: &Symmetry, target: &ProblemModel) -> Result<Symmetry> {
        match (self, target) {
            (Self::Magic(from), Self::Magic(to)) => magic::lift_symmetry(sigma, from, to),
            (Self::Vdw(from), Self::Vdw(to)) => vdw::lift_symmetry(sigma, from, to),
            (Self::Graceful(from), Self::Graceful(to)) => {
                graceful::lift_symmetry(sigma, from, to)
            }
            _ => Err(Error::NotLiftable("instances belong to different families".into())),
        }
    }
}
