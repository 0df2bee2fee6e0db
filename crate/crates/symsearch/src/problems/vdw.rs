//! Progression-free colourings: k-colourings of positions 1..n with no
//! monochromatic arithmetic progression of length l. A total solution is a
//! lower-bound certificate that W(l,k) > n.
//!
//! Positions are 1-based in certificates and rejection reasons, 0-based
//! internally.

use crate::csp::{Constraint, Problem};
use crate::error::{Error, Result};
use crate::problems::{SymmetryCatalog, Verification};
use crate::symmetry::{Symmetry, ValuePerm, VarPerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VdwSpec {
    n: usize,
    k: usize,
    l: usize,
}

impl VdwSpec {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidSpec("interval length must be at least 1".into()));
        }
        if k < 2 {
            return Err(Error::InvalidSpec("at least 2 colours are required".into()));
        }
        if l < 3 {
            return Err(Error::InvalidSpec("progression length must be at least 3".into()));
        }
        Ok(Self { n, k, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    fn universe(&self) -> Vec<i64> {
        (0..self.k as i64).collect()
    }
}

/// n variables over colours 0..k-1 with no monochromatic l-term progression.
pub fn build_vdw(spec: &VdwSpec) -> Problem {
    let domain: Vec<i64> = spec.universe();
    Problem::new(
        vec![domain; spec.n],
        vec![Constraint::NoMonoAP { length: spec.l }],
    )
    .expect("vdw model is well-formed")
}

fn reflect_images(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

/// Lexicographic permutations of `0..k`.
fn colour_perms(k: usize) -> Vec<Vec<i64>> {
    let mut result = Vec::new();
    let mut current: Vec<i64> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn recurse(k: usize, current: &mut Vec<i64>, used: &mut [bool], out: &mut Vec<Vec<i64>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for c in 0..k {
            if !used[c] {
                used[c] = true;
                current.push(c as i64);
                recurse(k, current, used, out);
                current.pop();
                used[c] = false;
            }
        }
    }
    recurse(k, &mut current, &mut used, &mut result);
    result
}

fn colorswap_name(images: &[i64]) -> String {
    let body: Vec<String> = images.iter().map(|c| c.to_string()).collect();
    format!("colorswap:{}", body.join("-"))
}

/// Named candidate symmetries: the identity, the reflection `i -> n-1-i`,
/// and (for k <= 5, where full enumeration stays small) every non-identity
/// colour permutation plus its composite with the reflection. Arbitrary
/// colour permutations beyond the catalogue can always be named as
/// `colorswap:<p0-p1-...>`.
pub fn vdw_symmetries(spec: &VdwSpec) -> SymmetryCatalog {
    let universe = spec.universe();
    let identity_vars: Vec<usize> = (0..spec.n).collect();
    let mut catalog = SymmetryCatalog::new();
    catalog.insert(
        "id",
        Symmetry::from_images(identity_vars.clone(), universe.clone(), universe.clone())
            .expect("identity"),
    );
    catalog.insert(
        "reflect",
        Symmetry::from_images(reflect_images(spec.n), universe.clone(), universe.clone())
            .expect("reflection"),
    );
    if spec.k <= 5 {
        for images in colour_perms(spec.k) {
            if images == universe {
                continue;
            }
            let name = colorswap_name(&images);
            catalog.insert(
                &name,
                Symmetry::from_images(identity_vars.clone(), universe.clone(), images.clone())
                    .expect("colour permutation"),
            );
            catalog.insert(
                format!("reflect+{name}"),
                Symmetry::from_images(reflect_images(spec.n), universe.clone(), images)
                    .expect("reflected colour permutation"),
            );
        }
    }
    catalog
}

/// Checks a colouring: length n, colours in 0..k-1, and no monochromatic
/// l-term progression. Rejection names the first violation, with 1-based
/// positions.
pub fn verify_vdw(spec: &VdwSpec, colouring: &[i64]) -> Result<Verification> {
    if colouring.len() != spec.n {
        return Err(Error::MalformedCertificate(format!(
            "colouring has {} positions, expected {}",
            colouring.len(),
            spec.n
        )));
    }
    for (i, &c) in colouring.iter().enumerate() {
        if c < 0 || c >= spec.k as i64 {
            return Ok(Verification::rejected(format!(
                "position {} has colour {c}, outside 0..{}",
                i + 1,
                spec.k - 1
            )));
        }
    }
    for start in 0..spec.n {
        for diff in 1.. {
            if start + (spec.l - 1) * diff >= spec.n {
                break;
            }
            let colour = colouring[start];
            if (1..spec.l).all(|i| colouring[start + i * diff] == colour) {
                return Ok(Verification::rejected(format!(
                    "monochromatic progression: start={}, difference={diff}, colour={colour}",
                    start + 1
                )));
            }
        }
    }
    Ok(Verification::Accepted)
}

/// Renders a colouring in the certificate format: a `vdw n k l` header and
/// one line of n digits with no separators (which confines the format to
/// k <= 10 colours).
pub fn write_certificate(spec: &VdwSpec, colouring: &[i64]) -> Result<String> {
    if spec.k > 10 {
        return Err(Error::MalformedCertificate(
            "digit certificates support at most 10 colours".into(),
        ));
    }
    if colouring.len() != spec.n {
        return Err(Error::MalformedCertificate(format!(
            "colouring has {} positions, expected {}",
            colouring.len(),
            spec.n
        )));
    }
    let digits: String = colouring
        .iter()
        .map(|&c| {
            if (0..10).contains(&c) {
                Ok(char::from(b'0' + c as u8))
            } else {
                Err(Error::MalformedCertificate(format!("colour {c} is not a digit")))
            }
        })
        .collect::<Result<String>>()?;
    Ok(format!("vdw {} {} {}\n{digits}\n", spec.n, spec.k, spec.l))
}

/// Parses the certificate format, insisting the header match `spec`.
pub fn read_certificate(spec: &VdwSpec, text: &str) -> Result<Vec<i64>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedCertificate("missing `vdw n k l` header".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let expected = format!("vdw {} {} {}", spec.n, spec.k, spec.l);
    if tokens.len() != 4 || tokens[0] != "vdw" {
        return Err(Error::MalformedCertificate(format!(
            "bad header `{header}`, expected `{expected}`"
        )));
    }
    if header.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
        return Err(Error::MalformedCertificate(format!(
            "header says `{header}`, expected `{expected}`"
        )));
    }
    let digits = lines
        .next()
        .ok_or_else(|| Error::MalformedCertificate("missing colouring line".into()))?
        .trim();
    if digits.len() != spec.n {
        return Err(Error::MalformedCertificate(format!(
            "colouring line has {} digits, expected {}",
            digits.len(),
            spec.n
        )));
    }
    digits
        .chars()
        .map(|ch| {
            ch.to_digit(10)
                .map(i64::from)
                .ok_or_else(|| Error::MalformedCertificate(format!("bad digit `{ch}`")))
        })
        .collect()
}

/// Carries a symmetry between interval lengths: the variable component must
/// be the identity or the reflection (re-instantiated at the target length)
/// and the colour permutation is kept as-is. The colour counts must match.
pub fn lift_symmetry(sigma: &Symmetry, from: &VdwSpec, to: &VdwSpec) -> Result<Symmetry> {
    if from.k != to.k {
        return Err(Error::NotLiftable(format!(
            "colour counts differ: {} vs {}",
            from.k, to.k
        )));
    }
    let var_images = if sigma.var_perm().is_identity() {
        (0..to.n).collect()
    } else if sigma.var_perm().images() == reflect_images(from.n) {
        reflect_images(to.n)
    } else {
        return Err(Error::NotLiftable(
            "variable permutation is neither the identity nor the reflection".into(),
        ));
    };
    let val_perm = ValuePerm::new(to.universe(), sigma.val_perm().images().to_vec())?;
    Ok(Symmetry::new(VarPerm::new(var_images)?, val_perm))
}
