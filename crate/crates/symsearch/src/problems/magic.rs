//! Normal magic squares: an n-by-n grid containing 1..n² with every row,
//! column and diagonal summing to the magic constant n(n²+1)/2.
//!
//! Cell (row r, column c) is variable `r*n + c`; certificates are row-major,
//! top to bottom.

use crate::csp::{Constraint, Problem};
use crate::error::{Error, Result};
use crate::problems::{SymmetryCatalog, Verification};
use crate::symmetry::Symmetry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagicSpec {
    n: usize,
}

impl MagicSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("magic square order must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    /// The common line sum n(n²+1)/2; n(n²+1) is always even.
    pub fn magic_constant(&self) -> i64 {
        let n = self.n as i64;
        n * (n * n + 1) / 2
    }

    fn index(&self, row: usize, col: usize) -> usize {
        row * self.n + col
    }

    /// The 2n+2 lines of the square (rows, columns, both diagonals), each as
    /// a list of variable indices, in the order verification reports them.
    pub fn lines(&self) -> Vec<(String, Vec<usize>)> {
        let n = self.n;
        let mut lines = Vec::with_capacity(2 * n + 2);
        for r in 0..n {
            lines.push((format!("row {r}"), (0..n).map(|c| self.index(r, c)).collect()));
        }
        for c in 0..n {
            lines.push((format!("column {c}"), (0..n).map(|r| self.index(r, c)).collect()));
        }
        lines.push(("main diagonal".into(), (0..n).map(|i| self.index(i, i)).collect()));
        lines.push((
            "anti-diagonal".into(),
            (0..n).map(|i| self.index(i, n - 1 - i)).collect(),
        ));
        lines
    }
}

/// The magic-square problem: n² variables over 1..n², all different, with
/// every line summing to the magic constant.
pub fn build_magic(spec: &MagicSpec) -> Problem {
    let cells = spec.cell_count();
    let domain: Vec<i64> = (1..=cells as i64).collect();
    let mut constraints = vec![Constraint::AllDifferent { vars: (0..cells).collect() }];
    constraints.extend(spec.lines().into_iter().map(|(_, vars)| Constraint::LinearSumEq {
        vars,
        target: spec.magic_constant(),
    }));
    Problem::new(vec![domain; cells], constraints).expect("magic model is well-formed")
}

/// Builds the variable permutation induced by a cell map `(r, c) -> (r', c')`.
fn spatial(n: usize, cell_map: impl Fn(usize, usize) -> (usize, usize)) -> Vec<usize> {
    let mut images = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            let (tr, tc) = cell_map(r, c);
            images[r * n + c] = tr * n + tc;
        }
    }
    images
}

/// Names of the eight spatial symmetries of the square, in catalogue order.
pub const SPATIAL_NAMES: [&str; 8] =
    ["id", "rot90", "rot180", "rot270", "flipH", "flipV", "diag", "antidiag"];

fn spatial_images(n: usize, name: &str) -> Vec<usize> {
    let last = n - 1;
    match name {
        "id" => spatial(n, |r, c| (r, c)),
        "rot90" => spatial(n, |r, c| (c, last - r)),
        "rot180" => spatial(n, |r, c| (last - r, last - c)),
        "rot270" => spatial(n, |r, c| (last - c, r)),
        "flipH" => spatial(n, |r, c| (r, last - c)),
        "flipV" => spatial(n, |r, c| (last - r, c)),
        "diag" => spatial(n, |r, c| (c, r)),
        "antidiag" => spatial(n, |r, c| (last - c, last - r)),
        _ => unreachable!("unknown spatial symmetry"),
    }
}

fn value_universe(n: usize) -> Vec<i64> {
    (1..=(n * n) as i64).collect()
}

fn inversion_images(n: usize) -> Vec<i64> {
    let cells = (n * n) as i64;
    (1..=cells).map(|k| cells + 1 - k).collect()
}

/// The named symmetries of the order-n square: the eight spatial symmetries
/// (value map identity) plus `inv`, the value inversion k -> n²+1-k on the
/// identity layout. Composites are obtained via `compose`.
pub fn magic_symmetries(spec: &MagicSpec) -> SymmetryCatalog {
    let n = spec.n;
    let universe = value_universe(n);
    let mut catalog = SymmetryCatalog::new();
    for name in SPATIAL_NAMES {
        let sym = Symmetry::from_images(spatial_images(n, name), universe.clone(), universe.clone())
            .expect("spatial symmetry is a valid permutation pair");
        catalog.insert(name, sym);
    }
    catalog.insert(
        "inv",
        Symmetry::from_images(
            (0..n * n).collect(),
            universe.clone(),
            inversion_images(n),
        )
        .expect("value inversion is a valid permutation pair"),
    );
    catalog
}

/// Checks a row-major grid: entries must be a permutation of 1..n² and all
/// 2n+2 line sums must equal the magic constant. The rejection reason names
/// the first violated line.
pub fn verify_magic(spec: &MagicSpec, grid: &[i64]) -> Result<Verification> {
    let cells = spec.cell_count();
    if grid.len() != cells {
        return Err(Error::MalformedCertificate(format!(
            "grid has {} entries, expected {cells}",
            grid.len()
        )));
    }
    let mut sorted = grid.to_vec();
    sorted.sort_unstable();
    if sorted != value_universe(spec.n) {
        return Ok(Verification::rejected(format!(
            "entries are not a permutation of 1..{cells}"
        )));
    }
    let target = spec.magic_constant();
    for (name, vars) in spec.lines() {
        let sum: i64 = vars.iter().map(|&v| grid[v]).sum();
        if sum != target {
            return Ok(Verification::rejected(format!(
                "{name} sums to {sum}, expected {target}"
            )));
        }
    }
    Ok(Verification::Accepted)
}

/// Renders a grid in the certificate format: n lines of n space-separated
/// integers, row-major top to bottom.
pub fn write_certificate(spec: &MagicSpec, grid: &[i64]) -> Result<String> {
    if grid.len() != spec.cell_count() {
        return Err(Error::MalformedCertificate(format!(
            "grid has {} entries, expected {}",
            grid.len(),
            spec.cell_count()
        )));
    }
    let mut out = String::new();
    for row in grid.chunks(spec.n) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    Ok(out)
}

/// Parses the certificate format back into a row-major grid.
pub fn read_certificate(spec: &MagicSpec, text: &str) -> Result<Vec<i64>> {
    let n = spec.n;
    let rows: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if rows.len() != n {
        return Err(Error::MalformedCertificate(format!(
            "expected {n} grid lines, found {}",
            rows.len()
        )));
    }
    let mut grid = Vec::with_capacity(spec.cell_count());
    for (r, row) in rows.iter().enumerate() {
        let entries = row
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| Error::MalformedCertificate(format!("bad entry `{tok}` in row {r}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        if entries.len() != n {
            return Err(Error::MalformedCertificate(format!(
                "row {r} has {} entries, expected {n}",
                entries.len()
            )));
        }
        grid.extend(entries);
    }
    Ok(grid)
}

/// Carries a symmetry of the order-m square to the order-n square: the
/// variable component must be one of the eight spatial symmetries and the
/// value component the identity or the inversion.
pub fn lift_symmetry(sigma: &Symmetry, from: &MagicSpec, to: &MagicSpec) -> Result<Symmetry> {
    let spatial_name = SPATIAL_NAMES
        .iter()
        .find(|name| sigma.var_perm().images() == spatial_images(from.n, name))
        .ok_or_else(|| {
            Error::NotLiftable("variable permutation is not a spatial square symmetry".into())
        })?;
    let val_perm = sigma.val_perm();
    let target_universe = value_universe(to.n);
    let val_images = if val_perm.is_identity() {
        target_universe.clone()
    } else if val_perm.images() == inversion_images(from.n) {
        inversion_images(to.n)
    } else {
        return Err(Error::NotLiftable(
            "value permutation is neither the identity nor the inversion".into(),
        ));
    };
    Symmetry::from_images(spatial_images(to.n, spatial_name), target_universe, val_images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::Assignment;
    use crate::csp::{enumerate, SearchConfig};
    use crate::symmetry::is_internal_symmetry;

    const SQUARE_A: [i64; 9] = [4, 9, 2, 3, 5, 7, 8, 1, 6];
    const SQUARE_B: [i64; 9] = [6, 7, 2, 1, 5, 9, 8, 3, 4];

    fn spec3() -> MagicSpec {
        MagicSpec::new(3).unwrap()
    }

    #[test]
    fn magic_constant_of_order_three_is_fifteen() {
        assert_eq!(spec3().magic_constant(), 15);
        assert_eq!(MagicSpec::new(4).unwrap().magic_constant(), 34);
    }

    #[test]
    fn order_one_square_has_a_single_solution() {
        let p = build_magic(&MagicSpec::new(1).unwrap());
        let result = enumerate(&p, &SearchConfig::default()).unwrap();
        assert_eq!(result.solutions, vec![Assignment::total(&[1])]);
    }

    #[test]
    fn antidiagonal_reflection_swaps_the_two_grids() {
        let catalog = magic_symmetries(&spec3());
        let sigma = catalog.get("antidiag").unwrap();
        let image = sigma.apply(&Assignment::total(&SQUARE_A)).unwrap();
        assert_eq!(image, Assignment::total(&SQUARE_B));
    }

    #[test]
    fn half_turn_is_an_involution() {
        let catalog = magic_symmetries(&spec3());
        let rot180 = catalog.get("rot180").unwrap();
        assert!(rot180.compose(rot180).unwrap().is_identity());
    }

    #[test]
    fn inversion_composed_with_half_turn_fixes_square_a() {
        let catalog = magic_symmetries(&spec3());
        let sigma = catalog.get("inv").unwrap().compose(catalog.get("rot180").unwrap()).unwrap();
        assert!(is_internal_symmetry(&sigma, &Assignment::total(&SQUARE_A)).unwrap());
    }

    #[test]
    fn verifier_accepts_both_reference_grids() {
        assert!(verify_magic(&spec3(), &SQUARE_A).unwrap().is_accepted());
        assert!(verify_magic(&spec3(), &SQUARE_B).unwrap().is_accepted());
    }

    #[test]
    fn verifier_names_the_first_broken_line() {
        let mut swapped = SQUARE_A;
        swapped.swap(0, 1); // 4 and 9 trade places
        let verdict = verify_magic(&spec3(), &swapped).unwrap();
        assert_eq!(verdict.reason(), Some("column 0 sums to 20, expected 15"));

        let mut crooked = SQUARE_A;
        crooked.swap(0, 4); // break row 0 first
        let verdict = verify_magic(&spec3(), &crooked).unwrap();
        assert_eq!(verdict.reason(), Some("row 0 sums to 16, expected 15"));
    }

    #[test]
    fn verifier_rejects_non_permutations_and_wrong_sizes() {
        let verdict = verify_magic(&spec3(), &[1; 9]).unwrap();
        assert!(!verdict.is_accepted());
        assert!(matches!(
            verify_magic(&spec3(), &[1, 2, 3]),
            Err(Error::MalformedCertificate(_))
        ));
    }

    #[test]
    fn certificate_round_trip() {
        let spec = spec3();
        let text = write_certificate(&spec, &SQUARE_A).unwrap();
        assert_eq!(text, "4 9 2\n3 5 7\n8 1 6\n");
        assert_eq!(read_certificate(&spec, &text).unwrap(), SQUARE_A.to_vec());
        assert!(read_certificate(&spec, "4 9\n3 5\n").is_err());
        assert!(read_certificate(&spec, "4 9 x\n3 5 7\n8 1 6\n").is_err());
    }

    #[test]
    fn lifting_carries_named_symmetries_across_orders() {
        let small = spec3();
        let big = MagicSpec::new(4).unwrap();
        let small_catalog = magic_symmetries(&small);
        let big_catalog = magic_symmetries(&big);
        let sigma = small_catalog.get("rot90").unwrap().compose(small_catalog.get("inv").unwrap()).unwrap();
        let lifted = lift_symmetry(&sigma, &small, &big).unwrap();
        let expected =
            big_catalog.get("rot90").unwrap().compose(big_catalog.get("inv").unwrap()).unwrap();
        assert_eq!(lifted, expected);

        let stranger = Symmetry::from_images(
            vec![1, 0, 2, 3, 4, 5, 6, 7, 8],
            (1..=9).collect(),
            (1..=9).collect(),
        )
        .unwrap();
        assert!(matches!(lift_symmetry(&stranger, &small, &big), Err(Error::NotLiftable(_))));
    }

    #[test]
    fn order_zero_is_rejected() {
        assert!(matches!(MagicSpec::new(0), Err(Error::InvalidSpec(_))));
    }
}
