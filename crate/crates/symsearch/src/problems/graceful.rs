//! Graceful labellings: injective vertex labels from 0..q (q = edge count)
//! such that the absolute differences along edges are pairwise distinct,
//! hence exactly 1..q. Ships cycles, wheels (rim plus hub) and double wheels
//! (two disjoint rims sharing one hub) alongside custom edge lists.

use crate::csp::{Constraint, Problem};
use crate::error::{Error, Result};
use crate::problems::{SymmetryCatalog, Verification};
use crate::symmetry::{Symmetry, ValuePerm, VarPerm};

/// A simple undirected graph on vertices `0..vertex_count`. Edges are stored
/// normalised: endpoints ordered low-high, list sorted, no loops, no
/// duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidSpec("graph needs at least one vertex".into()));
        }
        let mut normalised = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidSpec(format!(
                    "edge ({u}, {v}) leaves the vertex range 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("loop at vertex {u}")));
            }
            normalised.push((u.min(v), u.max(v)));
        }
        normalised.sort_unstable();
        if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSpec(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self { vertex_count, edges: normalised })
    }

    /// The cycle on vertices 0..n, edges `(i, i+1 mod n)`. Needs n >= 3.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec("a cycle needs at least 3 vertices".into()));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
    }

    /// The wheel: a rim cycle on 0..n plus a hub (vertex n) joined to every
    /// rim vertex. Needs n >= 3.
    pub fn wheel(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec("a wheel needs a rim of at least 3".into()));
        }
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).map(|i| (i, n)));
        Self::new(n + 1, edges)
    }

    /// The double wheel: two disjoint rim cycles (vertices 0..n and n..2n)
    /// sharing one hub (vertex 2n), 2n+1 vertices and 4n edges. Needs n >= 3.
    pub fn double_wheel(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec("a double wheel needs rims of at least 3".into()));
        }
        let hub = 2 * n;
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
        edges.extend((0..2 * n).map(|i| (i, hub)));
        Self::new(2 * n + 1, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    Cycle(usize),
    Wheel(usize),
    DoubleWheel(usize),
    Custom,
}

/// A graceful-labelling instance: a graph plus the family it was built from,
/// which fixes the certificate header and the symmetry catalogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GracefulSpec {
    family: Family,
    graph: Graph,
}

impl GracefulSpec {
    pub fn cycle(n: usize) -> Result<Self> {
        Ok(Self { family: Family::Cycle(n), graph: Graph::cycle(n)? })
    }

    pub fn wheel(n: usize) -> Result<Self> {
        Ok(Self { family: Family::Wheel(n), graph: Graph::wheel(n)? })
    }

    pub fn double_wheel(n: usize) -> Result<Self> {
        Ok(Self { family: Family::DoubleWheel(n), graph: Graph::double_wheel(n)? })
    }

    pub fn custom(graph: Graph) -> Self {
        Self { family: Family::Custom, graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The spec tag used in certificate headers and problem descriptions:
    /// `cycle:<n>`, `wheel:<n>`, `dwheel:<n>` or `custom`.
    pub fn tag(&self) -> String {
        match self.family {
            Family::Cycle(n) => format!("cycle:{n}"),
            Family::Wheel(n) => format!("wheel:{n}"),
            Family::DoubleWheel(n) => format!("dwheel:{n}"),
            Family::Custom => "custom".into(),
        }
    }
}

/// One variable per vertex over labels 0..q, all labels distinct, all edge
/// differences distinct. A solution is exactly a graceful labelling.
pub fn build_graceful(g: &Graph) -> Problem {
    let q = g.edge_count() as i64;
    let domain: Vec<i64> = (0..=q).collect();
    Problem::new(
        vec![domain; g.vertex_count()],
        vec![
            Constraint::AllDifferent { vars: (0..g.vertex_count()).collect() },
            Constraint::GracefulEdges { edges: g.edges().to_vec() },
        ],
    )
    .expect("graceful model is well-formed")
}

/// Checks a labelling: one label per vertex, labels injective into 0..q,
/// edge differences pairwise distinct. Rejection names the first violation.
pub fn verify_graceful(g: &Graph, labels: &[i64]) -> Result<Verification> {
    if labels.len() != g.vertex_count() {
        return Err(Error::MalformedCertificate(format!(
            "{} labels for {} vertices",
            labels.len(),
            g.vertex_count()
        )));
    }
    let q = g.edge_count() as i64;
    for (v, &label) in labels.iter().enumerate() {
        if label < 0 || label > q {
            return Ok(Verification::rejected(format!(
                "vertex {v} has label {label}, outside 0..{q}"
            )));
        }
    }
    let mut label_owner = vec![None; q as usize + 1];
    for (v, &label) in labels.iter().enumerate() {
        if let Some(first) = label_owner[label as usize] {
            return Ok(Verification::rejected(format!(
                "vertices {first} and {v} both have label {label}"
            )));
        }
        label_owner[label as usize] = Some(v);
    }
    let mut diff_owner = vec![None; q as usize + 1];
    for &(u, v) in g.edges() {
        let diff = (labels[u] - labels[v]).unsigned_abs() as usize;
        if let Some((a, b)) = diff_owner[diff] {
            return Ok(Verification::rejected(format!(
                "edges ({a}, {b}) and ({u}, {v}) both have difference {diff}"
            )));
        }
        diff_owner[diff] = Some((u, v));
    }
    Ok(Verification::Accepted)
}

fn rotation_images(n: usize, shift: usize) -> Vec<usize> {
    (0..n).map(|i| (i + shift) % n).collect()
}

fn identity_symmetry(spec: &GracefulSpec) -> Symmetry {
    let universe: Vec<i64> = (0..=spec.graph.edge_count() as i64).collect();
    Symmetry::from_images(
        (0..spec.graph.vertex_count()).collect(),
        universe.clone(),
        universe,
    )
    .expect("identity")
}

fn with_var_images(spec: &GracefulSpec, images: Vec<usize>) -> Symmetry {
    let universe: Vec<i64> = (0..=spec.graph.edge_count() as i64).collect();
    Symmetry::from_images(images, universe.clone(), universe).expect("rim symmetry")
}

fn complement_symmetry(spec: &GracefulSpec) -> Symmetry {
    let q = spec.graph.edge_count() as i64;
    let universe: Vec<i64> = (0..=q).collect();
    let images: Vec<i64> = (0..=q).rev().collect();
    Symmetry::from_images((0..spec.graph.vertex_count()).collect(), universe, images)
        .expect("complement")
}

/// Named candidate symmetries. Every graceful problem carries the identity
/// and the label complement `v -> q-v`. The built families add their rim
/// rotations (and, for the double wheel, the rim swap); these are graph
/// automorphisms, hence solution symmetries.
pub fn graceful_symmetries(spec: &GracefulSpec) -> SymmetryCatalog {
    let mut catalog = SymmetryCatalog::new();
    catalog.insert("id", identity_symmetry(spec));
    catalog.insert("complement", complement_symmetry(spec));
    match spec.family {
        Family::Cycle(n) => {
            catalog.insert("rimrot", with_var_images(spec, rotation_images(n, 1)));
        }
        Family::Wheel(n) => {
            let mut images = rotation_images(n, 1);
            images.push(n);
            catalog.insert("rimrot", with_var_images(spec, images));
        }
        Family::DoubleWheel(n) => {
            let hub = 2 * n;
            let both = |s1: usize, s2: usize| {
                let mut images = rotation_images(n, s1);
                images.extend(rotation_images(n, s2).into_iter().map(|i| n + i));
                images.push(hub);
                images
            };
            catalog.insert("rimrot", with_var_images(spec, both(1, 1)));
            catalog.insert("rim1rot", with_var_images(spec, both(1, 0)));
            catalog.insert("rim2rot", with_var_images(spec, both(0, 1)));
            let mut swap: Vec<usize> = (0..n).map(|i| n + i).collect();
            swap.extend(0..n);
            swap.push(hub);
            catalog.insert("rimswap", with_var_images(spec, swap));
        }
        Family::Custom => {}
    }
    catalog
}

/// Renders a labelling in the certificate format: a `graceful <tag>` header,
/// for custom graphs one `u v` line per edge, then one line of labels in
/// vertex-index order.
pub fn write_certificate(spec: &GracefulSpec, labels: &[i64]) -> Result<String> {
    if labels.len() != spec.graph.vertex_count() {
        return Err(Error::MalformedCertificate(format!(
            "{} labels for {} vertices",
            labels.len(),
            spec.graph.vertex_count()
        )));
    }
    let mut text = format!("graceful {}\n", spec.tag());
    if spec.family == Family::Custom {
        for (u, v) in spec.graph.edges() {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let line: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    text.push_str(&line.join(" "));
    text.push('\n');
    Ok(text)
}

/// Parses the certificate format. The header must match `spec`; a custom
/// certificate must list exactly the spec's edges (in any order or
/// orientation).
pub fn read_certificate(spec: &GracefulSpec, text: &str) -> Result<Vec<i64>> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    let expected = format!("graceful {}", spec.tag());
    let Some((&header, rest)) = lines.split_first() else {
        return Err(Error::MalformedCertificate(format!(
            "missing `{expected}` header"
        )));
    };
    if header.split_whitespace().collect::<Vec<_>>().join(" ") != expected {
        return Err(Error::MalformedCertificate(format!(
            "header says `{}`, expected `{expected}`",
            header.trim()
        )));
    }
    let Some((&label_line, edge_lines)) = rest.split_last() else {
        return Err(Error::MalformedCertificate("missing label line".into()));
    };
    if spec.family == Family::Custom {
        let mut edges = Vec::with_capacity(edge_lines.len());
        for line in edge_lines {
            let endpoints: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| {
                        Error::MalformedCertificate(format!("bad edge line `{line}`"))
                    })
                })
                .collect::<Result<_>>()?;
            let [u, v] = endpoints[..] else {
                return Err(Error::MalformedCertificate(format!(
                    "bad edge line `{line}`, expected `u v`"
                )));
            };
            edges.push((u, v));
        }
        let listed = Graph::new(spec.graph.vertex_count(), edges)?;
        if listed != spec.graph {
            return Err(Error::MalformedCertificate(
                "edge list does not match the problem graph".into(),
            ));
        }
    } else if !edge_lines.is_empty() {
        return Err(Error::MalformedCertificate(
            "unexpected extra lines before the label line".into(),
        ));
    }
    let labels: Vec<i64> = label_line
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::MalformedCertificate(format!("bad label `{t}`")))
        })
        .collect::<Result<_>>()?;
    if labels.len() != spec.graph.vertex_count() {
        return Err(Error::MalformedCertificate(format!(
            "{} labels for {} vertices",
            labels.len(),
            spec.graph.vertex_count()
        )));
    }
    Ok(labels)
}

fn rim_shift(images: &[usize], n: usize, offset: usize, target_offset: usize) -> Option<usize> {
    let shift = images[offset].checked_sub(target_offset)?;
    if shift >= n {
        return None;
    }
    (0..n)
        .all(|i| images[offset + i] == target_offset + (i + shift) % n)
        .then_some(shift)
}

/// Carries a symmetry between instances of the same family: the variable
/// component must match a rotation/swap template (re-instantiated at the
/// target size) and the value component must be the identity or the
/// complement (re-instantiated over the target label range).
pub fn lift_symmetry(sigma: &Symmetry, from: &GracefulSpec, to: &GracefulSpec) -> Result<Symmetry> {
    let images = sigma.var_perm().images();
    let var_images: Vec<usize> = match (from.family, to.family) {
        (Family::Cycle(n), Family::Cycle(m)) => {
            let shift = rim_shift(images, n, 0, 0)
                .ok_or_else(|| Error::NotLiftable("not a rim rotation".into()))?;
            if shift >= m {
                return Err(Error::NotLiftable(format!(
                    "rotation by {shift} does not fit a cycle of {m}"
                )));
            }
            rotation_images(m, shift)
        }
        (Family::Wheel(n), Family::Wheel(m)) => {
            if images[n] != n {
                return Err(Error::NotLiftable("hub is not fixed".into()));
            }
            let shift = rim_shift(images, n, 0, 0)
                .ok_or_else(|| Error::NotLiftable("not a rim rotation".into()))?;
            if shift >= m {
                return Err(Error::NotLiftable(format!(
                    "rotation by {shift} does not fit a rim of {m}"
                )));
            }
            let mut lifted = rotation_images(m, shift);
            lifted.push(m);
            lifted
        }
        (Family::DoubleWheel(n), Family::DoubleWheel(m)) => {
            if images[2 * n] != 2 * n {
                return Err(Error::NotLiftable("hub is not fixed".into()));
            }
            let swapped = images[0] >= n;
            let (first_target, second_target) = if swapped { (n, 0) } else { (0, n) };
            let s1 = rim_shift(images, n, 0, first_target);
            let s2 = rim_shift(images, n, n, second_target);
            let (Some(s1), Some(s2)) = (s1, s2) else {
                return Err(Error::NotLiftable(
                    "rims are not rotated/swapped coherently".into(),
                ));
            };
            if s1 >= m || s2 >= m {
                return Err(Error::NotLiftable(format!(
                    "rotation by {} does not fit rims of {m}",
                    s1.max(s2)
                )));
            }
            let mut lifted: Vec<usize> = if swapped {
                let mut v: Vec<usize> = rotation_images(m, s1).into_iter().map(|i| m + i).collect();
                v.extend(rotation_images(m, s2));
                v
            } else {
                let mut v = rotation_images(m, s1);
                v.extend(rotation_images(m, s2).into_iter().map(|i| m + i));
                v
            };
            lifted.push(2 * m);
            lifted
        }
        (Family::Custom, _) | (_, Family::Custom) => {
            return Err(Error::NotLiftable(
                "custom graphs have no lifting template".into(),
            ));
        }
        _ => {
            return Err(Error::NotLiftable(format!(
                "family mismatch: {} vs {}",
                from.tag(),
                to.tag()
            )));
        }
    };
    let q = to.graph.edge_count() as i64;
    let universe: Vec<i64> = (0..=q).collect();
    let val_images: Vec<i64> = if sigma.val_perm().is_identity() {
        universe.clone()
    } else if sigma
        .val_perm()
        .images()
        .iter()
        .rev()
        .eq(sigma.val_perm().universe().iter())
    {
        (0..=q).rev().collect()
    } else {
        return Err(Error::NotLiftable(
            "value permutation is neither the identity nor the complement".into(),
        ));
    };
    Ok(Symmetry::new(
        VarPerm::new(var_images)?,
        ValuePerm::new(universe, val_images)?,
    ))
}
