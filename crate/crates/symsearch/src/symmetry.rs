//! Symmetries: paired variable and value permutations acting on assignments.
//!
//! A [`Symmetry`] moves the binding `(x, v)` to `(pi(x), rho(v))`. Composition
//! is right-to-left: `a.compose(&b)` applies `b` first, so
//! `a.compose(&b).apply(s) == a.apply(b.apply(s))`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::assignment::Assignment;
use crate::error::{Error, Result};

/// Default cap on the number of elements [`close_group`] may materialise.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// A permutation of the variable indices `0..arity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarPerm(Vec<usize>);

impl VarPerm {
    /// Builds a variable permutation from its image list: variable `x` maps
    /// to `images[x]`. Rejects lists that are not permutations of `0..len`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let arity = images.len();
        let mut seen = vec![false; arity];
        for &img in &images {
            if img >= arity || seen[img] {
                return Err(Error::InvalidVarPerm { arity });
            }
            seen[img] = true;
        }
        Ok(Self(images))
    }

    pub fn identity(arity: usize) -> Self {
        Self((0..arity).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, var: usize) -> usize {
        self.0[var]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &img)| x == img)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (x, &img) in self.0.iter().enumerate() {
            inv[img] = x;
        }
        Self(inv)
    }

    /// `self` after `other`: the result maps `x` to `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: other.arity() });
        }
        Ok(Self(other.0.iter().map(|&x| self.0[x]).collect()))
    }

    /// Cycle decomposition. Each cycle starts at its smallest member and
    /// cycles are listed by ascending anchor; fixed points appear as
    /// singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.0[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.0[next];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

/// A permutation of a finite, sorted integer value universe.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValuePerm {
    universe: Vec<i64>,
    images: Vec<i64>,
}

impl ValuePerm {
    /// Builds a value permutation: `universe[i]` maps to `images[i]`.
    ///
    /// The universe must be sorted and duplicate-free, and the images must
    /// be a permutation of it.
    pub fn new(universe: Vec<i64>, images: Vec<i64>) -> Result<Self> {
        if universe.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidUniverse);
        }
        if images.len() != universe.len() {
            return Err(Error::InvalidValPerm);
        }
        let mut sorted = images.clone();
        sorted.sort_unstable();
        if sorted != universe {
            return Err(Error::InvalidValPerm);
        }
        Ok(Self { universe, images })
    }

    pub fn identity(universe: Vec<i64>) -> Result<Self> {
        let images = universe.clone();
        Self::new(universe, images)
    }

    pub fn universe(&self) -> &[i64] {
        &self.universe
    }

    /// Images listed in universe order.
    pub fn images(&self) -> &[i64] {
        &self.images
    }

    /// The image of `value`, or `None` when it lies outside the universe.
    pub fn image(&self, value: i64) -> Option<i64> {
        self.universe
            .binary_search(&value)
            .ok()
            .map(|i| self.images[i])
    }

    /// `n`-fold application of the permutation to `value`.
    pub fn iterate(&self, value: i64, n: usize) -> Option<i64> {
        let mut v = value;
        for _ in 0..n {
            v = self.image(v)?;
        }
        Some(v)
    }

    pub fn is_identity(&self) -> bool {
        self.universe == self.images
    }

    pub fn inverse(&self) -> Self {
        let mut pairs: Vec<(i64, i64)> = self
            .images
            .iter()
            .zip(&self.universe)
            .map(|(&img, &v)| (img, v))
            .collect();
        pairs.sort_unstable();
        let images = pairs.into_iter().map(|(_, v)| v).collect();
        Self { universe: self.universe.clone(), images }
    }

    /// `self` after `other`: the result maps `v` to `self(other(v))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(
                "cannot compose value permutations over different universes".into(),
            ));
        }
        let images = other
            .images
            .iter()
            .map(|&v| self.image(v).expect("image within universe"))
            .collect();
        Ok(Self { universe: self.universe.clone(), images })
    }

    /// True when the permutation is strictly order-preserving.
    pub fn is_increasing(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    /// True when the permutation is strictly order-reversing.
    pub fn is_decreasing(&self) -> bool {
        self.images.windows(2).all(|w| w[0] > w[1])
    }

    /// When the permutation is `v -> s - v` for a fixed `s`, returns `s`.
    pub fn reflection_offset(&self) -> Option<i64> {
        let first = self.universe.first()?;
        let s = first + self.image(*first)?;
        for (&v, &img) in self.universe.iter().zip(&self.images) {
            if v + img != s {
                return None;
            }
        }
        Some(s)
    }
}

/// A variable permutation paired with a value permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symmetry {
    var_perm: VarPerm,
    val_perm: ValuePerm,
}

impl Symmetry {
    pub fn new(var_perm: VarPerm, val_perm: ValuePerm) -> Self {
        Self { var_perm, val_perm }
    }

    pub fn from_images(var_images: Vec<usize>, universe: Vec<i64>, val_images: Vec<i64>) -> Result<Self> {
        Ok(Self {
            var_perm: VarPerm::new(var_images)?,
            val_perm: ValuePerm::new(universe, val_images)?,
        })
    }

    pub fn identity(arity: usize, universe: Vec<i64>) -> Result<Self> {
        Ok(Self {
            var_perm: VarPerm::identity(arity),
            val_perm: ValuePerm::identity(universe)?,
        })
    }

    pub fn arity(&self) -> usize {
        self.var_perm.arity()
    }

    pub fn universe(&self) -> &[i64] {
        self.val_perm.universe()
    }

    pub fn var_perm(&self) -> &VarPerm {
        &self.var_perm
    }

    pub fn val_perm(&self) -> &ValuePerm {
        &self.val_perm
    }

    pub fn is_identity(&self) -> bool {
        self.var_perm.is_identity() && self.val_perm.is_identity()
    }

    /// Moves every binding `(x, v)` to `(pi(x), rho(v))`.
    ///
    /// Works on partial assignments too; rejects assignments of the wrong
    /// arity or with values outside the universe.
    pub fn apply(&self, a: &Assignment) -> Result<Assignment> {
        if a.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: a.arity() });
        }
        let mut bindings = Vec::with_capacity(a.len());
        for &(var, value) in a.bindings() {
            let image = self
                .val_perm
                .image(value)
                .ok_or(Error::ValueOutsideUniverse { var, value })?;
            bindings.push((self.var_perm.image(var), image));
        }
        Assignment::new(a.arity(), bindings)
    }

    /// Pointwise image of a set of assignments. Bijectivity means the
    /// cardinality is preserved.
    pub fn apply_to_set(&self, set: &BTreeSet<Assignment>) -> Result<BTreeSet<Assignment>> {
        set.iter().map(|a| self.apply(a)).collect()
    }

    /// `self` after `other`, so that
    /// `self.compose(&other).apply(a) == self.apply(&other.apply(a))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            var_perm: self.var_perm.compose(&other.var_perm)?,
            val_perm: self.val_perm.compose(&other.val_perm)?,
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            var_perm: self.var_perm.inverse(),
            val_perm: self.val_perm.inverse(),
        }
    }

    /// Renders the symmetry in the literal text format: a `var:` line with
    /// the image of each variable and a `val:` line with the image of each
    /// universe value in universe order.
    pub fn to_literal(&self) -> String {
        let vars = self
            .var_perm
            .images()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let vals = self
            .val_perm
            .images()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!("var: {vars}\nval: {vals}\n")
    }

    /// Parses the literal text format for a symmetry over `arity` variables
    /// and the given universe.
    ///
    /// Blank lines and `#` comments are skipped. A missing `var:` or `val:`
    /// line denotes the identity on that component; at least one of the two
    /// must be present.
    pub fn parse_literal(text: &str, arity: usize, universe: &[i64]) -> Result<Self> {
        let mut var_images: Option<Vec<usize>> = None;
        let mut val_images: Option<Vec<i64>> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("var:") {
                if var_images.is_some() {
                    return Err(Error::MalformedSymmetry("duplicate var: line".into()));
                }
                let images = rest
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>().map_err(|_| {
                            Error::MalformedSymmetry(format!("bad variable index `{tok}`"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                if images.len() != arity {
                    return Err(Error::MalformedSymmetry(format!(
                        "var: line has {} entries, expected {arity}",
                        images.len()
                    )));
                }
                var_images = Some(images);
            } else if let Some(rest) = line.strip_prefix("val:") {
                if val_images.is_some() {
                    return Err(Error::MalformedSymmetry("duplicate val: line".into()));
                }
                let images = rest
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<i64>()
                            .map_err(|_| Error::MalformedSymmetry(format!("bad value `{tok}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if images.len() != universe.len() {
                    return Err(Error::MalformedSymmetry(format!(
                        "val: line has {} entries, expected {}",
                        images.len(),
                        universe.len()
                    )));
                }
                val_images = Some(images);
            } else {
                return Err(Error::MalformedSymmetry(format!("unrecognised line `{line}`")));
            }
        }
        if var_images.is_none() && val_images.is_none() {
            return Err(Error::MalformedSymmetry("expected a var: or val: line".into()));
        }
        Self::from_images(
            var_images.unwrap_or_else(|| (0..arity).collect()),
            universe.to_vec(),
            val_images.unwrap_or_else(|| universe.to_vec()),
        )
    }
}

impl PartialOrd for Symmetry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Symmetry {
    /// Permutation-lexicographic order: variable images first, then value
    /// images, then the universe itself.
    fn cmp(&self, other: &Self) -> Ordering {
        self.var_perm
            .images()
            .cmp(other.var_perm.images())
            .then_with(|| self.val_perm.images().cmp(other.val_perm.images()))
            .then_with(|| self.val_perm.universe().cmp(other.val_perm.universe()))
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "var {:?} / val {:?}", self.var_perm.images(), self.val_perm.images())
    }
}

/// A symmetry group given by generators, with optionally materialised
/// elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroupSpec {
    generators: Vec<Symmetry>,
    elements: Option<Vec<Symmetry>>,
}

impl SymmetryGroupSpec {
    pub fn from_generators(generators: Vec<Symmetry>) -> Self {
        Self { generators, elements: None }
    }

    /// Stores explicit elements alongside the generators; `validate` checks
    /// that they really are the closure of the generators.
    pub fn with_elements(generators: Vec<Symmetry>, elements: Vec<Symmetry>) -> Self {
        Self { generators, elements: Some(elements) }
    }

    pub fn generators(&self) -> &[Symmetry] {
        &self.generators
    }

    pub fn validate(&self) -> Result<()> {
        let closure = close_group(&self.generators)?;
        if let Some(elements) = &self.elements {
            if !is_closed_group(elements) {
                return Err(Error::NotAGroup(
                    "stated elements are not closed under composition".into(),
                ));
            }
            let stated: BTreeSet<_> = elements.iter().collect();
            let closed: BTreeSet<_> = closure.iter().collect();
            if stated != closed {
                return Err(Error::NotAGroup(
                    "stated elements differ from the closure of the generators".into(),
                ));
            }
        }
        Ok(())
    }

    /// The group elements: the stated list when present, otherwise the
    /// closure of the generators.
    pub fn elements(&self) -> Result<Vec<Symmetry>> {
        self.validate()?;
        match &self.elements {
            Some(elements) => Ok(elements.clone()),
            None => close_group(&self.generators),
        }
    }
}

/// Closes a generator list into the full group, capped at
/// [`DEFAULT_CLOSURE_CAP`] elements.
///
/// The result is in deterministic order: breadth-first from the identity,
/// with each level sorted permutation-lexicographically. An empty generator
/// list yields the identity-only group over no variables.
pub fn close_group(generators: &[Symmetry]) -> Result<Vec<Symmetry>> {
    close_group_with_cap(generators, DEFAULT_CLOSURE_CAP)
}

/// [`close_group`] with an explicit element cap.
pub fn close_group_with_cap(generators: &[Symmetry], cap: usize) -> Result<Vec<Symmetry>> {
    let Some(first) = generators.first() else {
        return Ok(vec![Symmetry::identity(0, Vec::new())?]);
    };
    for g in generators {
        if g.arity() != first.arity() {
            return Err(Error::ArityMismatch { expected: first.arity(), found: g.arity() });
        }
        if g.universe() != first.universe() {
            return Err(Error::UniverseMismatch(
                "generators act on different value universes".into(),
            ));
        }
    }
    let identity = Symmetry::identity(first.arity(), first.universe().to_vec())?;
    let mut seen: BTreeSet<Symmetry> = BTreeSet::new();
    seen.insert(identity.clone());
    let mut ordered = vec![identity.clone()];
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for elem in &frontier {
            for gen in generators {
                let composed = elem.compose(gen)?;
                if seen.insert(composed.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    next.push(composed);
                }
            }
        }
        next.sort_unstable();
        ordered.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(ordered)
}

/// True when `elements` is a nonempty list closed under composition that
/// contains the identity (and hence, being finite, inverses too).
pub fn is_closed_group(elements: &[Symmetry]) -> bool {
    if elements.is_empty() || !elements.iter().any(Symmetry::is_identity) {
        return false;
    }
    let set: BTreeSet<_> = elements.iter().collect();
    for a in elements {
        for b in elements {
            match a.compose(b) {
                Ok(c) if set.contains(&c) => {}
                _ => return false,
            }
        }
    }
    true
}

/// Whether `sigma` fixes the total assignment `a` pointwise as a set of
/// bindings, i.e. `sigma(a) == a`.
pub fn is_internal_symmetry(sigma: &Symmetry, a: &Assignment) -> Result<bool> {
    a.require_total()?;
    Ok(sigma.apply(a)? == *a)
}

/// Filters `candidates` down to the symmetries internal to `a`, preserving
/// candidate order.
pub fn find_internal_symmetries(a: &Assignment, candidates: &[Symmetry]) -> Result<Vec<Symmetry>> {
    let mut found = Vec::new();
    for sigma in candidates {
        if is_internal_symmetry(sigma, a)? {
            found.push(sigma.clone());
        }
    }
    Ok(found)
}

/// The orbit `{sigma(a) : sigma in group}` of a total assignment under a
/// group (which must contain the identity, so the orbit contains `a`).
pub fn orbit(a: &Assignment, group: &[Symmetry]) -> Result<BTreeSet<Assignment>> {
    a.require_total()?;
    if !group.iter().any(Symmetry::is_identity) {
        return Err(Error::NotAGroup("orbit requires a group containing the identity".into()));
    }
    group.iter().map(|sigma| sigma.apply(a)).collect()
}
