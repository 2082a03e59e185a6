//! The cross-validation run behind `verify`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use watercells::bijections::{
    certify, water_set, AppendOrTrim, Bijection, CertificationError, ColoredPartitionMap,
    DecreaseLastPart, DiagonalToInternalEven, DoublingToInternalEven, ManyWaterCells, OneWaterCell,
};
use watercells::compositions::{count, fibonacci, FamilyKind};
use watercells::genfunc::{
    bivariate_expand, column_gf, dgf_assemble, diagonal_gf, positive_water_diagonal_sums_closed,
    positive_water_row_sums_closed, rgf_equal, w0_from_fibonacci, w0_gf, w0_gf_as_sum,
    RiordanArray,
};
use watercells::watertable::{
    build_recurrence_table_with, build_table, d_closed, row_len, w0_closed, DiagonalSums, Method,
    RecurrenceSteps,
};

/// Largest `k` exercised by the bijection checks.
const MAX_K: usize = 12;
/// Minimum series order for the generating-function checks.
const MIN_ORDER: usize = 20;

/// Outcome of one named check over a stated range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub range: String,
    pub pass: bool,
    /// First counterexample when the check fails.
    pub witness: Option<String>,
}

impl Check {
    fn new(name: &str, range: impl Into<String>, witness: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            range: range.into(),
            pass: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn overall(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status} {} [{}]", c.name, c.range);
            if let Some(w) = &c.witness {
                let _ = write!(out, ": {w}");
            }
            out.push('\n');
        }
        let total = self.checks.len();
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let verdict = if self.overall() { "OK" } else { "FAILED" };
        let _ = writeln!(out, "{verdict}: {passed}/{total} checks passed");
        out
    }
}

/// Runs every check with the standard recurrences.
pub fn verify(max_n: usize) -> VerificationReport {
    verify_with(max_n, &RecurrenceSteps::default())
}

/// Runs every check, building the recurrence table with `steps`.
pub fn verify_with(max_n: usize, steps: &RecurrenceSteps) -> VerificationReport {
    let order = max_n.max(MIN_ORDER);
    let brute = build_table(max_n, Method::BruteForce);
    let recurrence = build_recurrence_table_with(max_n, steps);
    let series = build_table(max_n, Method::Series);
    let upto = format!("n <= {max_n}");
    let mut checks = Vec::new();

    let first_difference = |other: &watercells::WaterTable| {
        brute.differences(other).first().map(|&(n, k)| {
            format!(
                "(n,k)=({n},{k}): bruteforce {} vs {} {}",
                brute.get(n, k),
                other.method(),
                other.get(n, k)
            )
        })
    };
    checks.push(Check::new(
        "three-way table equivalence",
        &upto,
        first_difference(&recurrence).or_else(|| first_difference(&series)),
    ));

    checks.push(Check::new(
        "row sums are Fibonacci",
        &upto,
        (0..=max_n).find_map(|n| {
            let (got, want) = (brute.row_sum(n), fibonacci(n as u64 + 1));
            (got != want).then(|| format!("n={n}: {got} vs F_{} = {want}", n + 1))
        }),
    ));

    checks.push(Check::new(
        "w(n,0) = floor(n^2/4) + 1",
        &upto,
        (0..=max_n).find_map(|n| {
            let (got, want) = (brute.get(n, 0), w0_closed(n as u64));
            (got != want).then(|| format!("n={n}: {got} vs {want}"))
        }),
    ));

    let diagonal = DiagonalSums::from_table(&brute);
    checks.push(Check::new(
        "d(n) closed form",
        &upto,
        (0..=max_n).find_map(|n| {
            let (got, want) = (diagonal.get(n), d_closed(n as u64));
            (got != &want).then(|| format!("n={n}: {got} vs {want}"))
        }),
    ));
    checks.push(Check::new(
        "d(n) = c_ie(n)",
        &upto,
        (0..=max_n).find_map(|n| {
            let cie = count(FamilyKind::InternalEven, n as u32);
            (diagonal.get(n) != &cie).then(|| format!("n={n}: d={} vs c_ie={cie}", diagonal.get(n)))
        }),
    ));

    checks.extend(bijection_checks(max_n));
    checks.extend(gf_checks(max_n, order, &brute));
    VerificationReport { checks }
}

fn first_failure<B: Bijection>(maps: impl IntoIterator<Item = B>) -> Option<String> {
    maps.into_iter()
        .find_map(|m| certify(&m).err().map(|e: CertificationError| e.to_string()))
}

fn bijection_checks(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    let ks = |n: usize| 2..=MAX_K.min(n.saturating_sub(4));

    checks.push(Check::new(
        "W(n,0) -> W(n-1,0) u W^i(n-1,0) bijection",
        format!("2 <= n <= {max_n}"),
        first_failure((2..=max_n).map(|n| DecreaseLastPart::new(n).expect("n >= 2"))),
    ));
    checks.push(Check::new(
        "2W(n-3,0) -> W(n-4,0) u W^j(n-1,0) bijection",
        format!("4 <= n <= {max_n}"),
        first_failure((4..=max_n).map(|n| AppendOrTrim::new(n).expect("n >= 4"))),
    ));
    checks.push(Check::new(
        "one-water-cell bijection",
        format!("5 <= n <= {max_n}"),
        first_failure((5..=max_n).map(|n| OneWaterCell::new(n).expect("n >= 5"))),
    ));
    checks.push(Check::new(
        "k-water-cell bijection",
        format!("6 <= n <= {max_n}, 2 <= k <= {MAX_K}"),
        first_failure(
            (6..=max_n).flat_map(|n| ks(n).map(move |k| ManyWaterCells::new(n, k).expect("valid"))),
        ),
    ));
    checks.push(Check::new(
        "colored-partition bijection",
        format!("n <= {max_n}, k <= {MAX_K}"),
        first_failure(
            (0..=max_n).flat_map(|n| (0..=MAX_K).map(move |k| ColoredPartitionMap::new(n, k))),
        ),
    ));
    checks.push(Check::new(
        "colored-partition image is W(n,k)",
        format!("n <= {max_n}, k <= {MAX_K}"),
        (0..=max_n)
            .flat_map(|n| (0..=MAX_K).map(move |k| (n, k)))
            .find_map(|(n, k)| {
                let map = ColoredPartitionMap::new(n, k);
                let mut image: Vec<_> = map
                    .domain()
                    .iter()
                    .filter_map(|p| map.forward(p).ok())
                    .collect();
                image.sort();
                (image != water_set(n, k)).then(|| format!("(n,k)=({n},{k})"))
            }),
    ));
    checks.push(Check::new(
        "diagonal to C_ie bijection",
        format!("n <= {max_n}"),
        first_failure((0..=max_n).map(DiagonalToInternalEven::new)),
    ));
    checks.push(Check::new(
        "copies of C(m) to C_ie bijection",
        format!("1 <= n <= {max_n}"),
        first_failure((1..=max_n).map(|n| DoublingToInternalEven::new(n).expect("n >= 1"))),
    ));
    checks
}

fn gf_checks(max_n: usize, order: usize, brute: &watercells::WaterTable) -> Vec<Check> {
    let mut checks = Vec::new();
    let identity = |name: &str, holds: bool| {
        Check::new(
            name,
            "exact",
            (!holds).then(|| "rational functions differ".to_string()),
        )
    };

    checks.push(identity(
        "w(n,0) gf: closed form = sum form",
        rgf_equal(&w0_gf(), &w0_gf_as_sum()),
    ));
    checks.push(identity(
        "w(n,0) gf: Fibonacci minus positive-water rows",
        rgf_equal(&w0_from_fibonacci(), &w0_gf()),
    ));
    checks.push(identity(
        "d(n) gf: closed form = assembled form",
        rgf_equal(&dgf_assemble(), &diagonal_gf()),
    ));

    let riordan = RiordanArray::positive_water();
    checks.push(identity(
        "Riordan row sums closed form",
        rgf_equal(&riordan.row_sums(), &positive_water_row_sums_closed()),
    ));
    checks.push(identity(
        "Riordan diagonal sums closed form",
        rgf_equal(
            &riordan.diagonal_sums(),
            &positive_water_diagonal_sums_closed(),
        ),
    ));
    let termwise = |name: &str, gf: &watercells::RationalGF, terms: Vec<BigInt>| {
        let series = gf.series(order).expect("unit constant term");
        Check::new(
            name,
            format!("order {order}"),
            (0..=order).find_map(|i| {
                (series[i] != terms[i]).then(|| format!("t^{i}: {} vs {}", series[i], terms[i]))
            }),
        )
    };
    checks.push(termwise(
        "Riordan row sums termwise",
        &riordan.row_sums(),
        riordan.row_sums_termwise(order),
    ));
    checks.push(termwise(
        "Riordan diagonal sums termwise",
        &riordan.diagonal_sums(),
        riordan.diagonal_sums_termwise(order),
    ));

    checks.push(Check::new(
        "Riordan entries = w(i+5, j+1)",
        format!("i + 5 <= {max_n}"),
        (0..=max_n.saturating_sub(5))
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .find_map(|(i, j)| {
                let (got, want) = (riordan.entry(i, j), BigInt::from(brute.get(i + 5, j + 1)));
                (got != want).then(|| format!("(i,j)=({i},{j}): {got} vs {want}"))
            }),
    ));

    checks.push(Check::new(
        "column gfs match table",
        format!("n <= {max_n}"),
        (0..row_len(max_n)).find_map(|k| {
            let series = column_gf(k as u32)
                .series(max_n)
                .expect("unit constant term");
            (0..=max_n).find_map(|n| {
                let want = BigInt::from(brute.get(n, k));
                (series[n] != want).then(|| format!("(n,k)=({n},{k}): {} vs {want}", series[n]))
            })
        }),
    ));

    let diagonal_series = diagonal_gf().series(max_n).expect("unit constant term");
    let diagonal = DiagonalSums::from_table(brute);
    checks.push(Check::new(
        "d(n) gf matches diagonal sums",
        format!("n <= {max_n}"),
        (0..=max_n).find_map(|n| {
            let want = BigInt::from(diagonal.get(n).clone());
            (diagonal_series[n] != want).then(|| format!("n={n}: {} vs {want}", diagonal_series[n]))
        }),
    ));

    let bivariate = bivariate_expand(max_n).at_z_one();
    checks.push(Check::new(
        "bivariate gf at z=1 is Fibonacci",
        format!("n <= {max_n}"),
        (0..=max_n).find_map(|n| {
            let want = BigInt::from(fibonacci(n as u64 + 1));
            (bivariate[n] != want).then(|| format!("n={n}: {} vs {want}", bivariate[n]))
        }),
    ));
    checks
}
