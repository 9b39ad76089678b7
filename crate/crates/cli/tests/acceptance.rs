//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use clique_ext::antichain::{
    brute_force_antichains, count_antichains, count_intersecting_antichains,
    is_intersecting_antichain, middle_layer_family, scarce_equivalence_check,
};
use clique_ext::clique::verify_triple_claim;
use clique_ext::extension::{enumerate_extensions, ElementClass, ExtensionKind};
use clique_ext::family::{
    brute_force_families, count_families, is_linear, is_scarce, verify_compression, FamilyKind,
    SetFamily,
};
use clique_ext::subset::binomial;
use clique_ext::{GroundScale, Result, RunOptions};

fn scale(n: u32) -> GroundScale {
    GroundScale::new(n).expect("valid scale")
}

fn opts() -> RunOptions {
    RunOptions::with_threads(4)
}

/// Outcome of one criterion: failure details, empty when it passed.
struct Outcome {
    notes: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            notes: Vec::new(),
            summary: String::new(),
        }
    }

    fn expect(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if !ok {
            self.notes.push(note());
        }
    }

    fn within(&mut self, elapsed: Duration, limit: Duration) {
        self.expect(elapsed < limit, || {
            format!("took {elapsed:.2?}, limit {limit:?}")
        });
    }
}

fn c1_oracle_counts() -> Result<Outcome> {
    let mut out = Outcome::new();
    let start = Instant::now();
    let o = opts();
    let mut checked = 0;
    for n in 1..=4 {
        let s = scale(n);
        let pairs = [
            (
                "linear",
                count_families(s, FamilyKind::Linear, &o)?,
                brute_force_families(s, is_linear, &o)?,
            ),
            (
                "scarce",
                count_families(s, FamilyKind::Scarce, &o)?,
                brute_force_families(s, is_scarce, &o)?,
            ),
            (
                "antichains",
                count_antichains(s, &o)?,
                brute_force_antichains(s, &o)?,
            ),
            (
                "intersecting",
                count_intersecting_antichains(s, &o)?,
                brute_force_families(s, is_intersecting_antichain, &o)?,
            ),
        ];
        for (what, engine, oracle) in pairs {
            checked += 1;
            out.expect(engine == oracle, || {
                format!("{what} n={n}: engine {engine}, oracle {oracle}")
            });
        }
    }
    let pinned: [(&str, u32, u64); 6] = [
        ("linear", 1, 2),
        ("linear", 2, 5),
        ("scarce", 2, 4),
        ("intersecting", 3, 12),
        ("antichains", 3, 20),
        ("antichains", 4, 168),
    ];
    for (what, n, want) in pinned {
        let s = scale(n);
        let got = match what {
            "linear" => brute_force_families(s, is_linear, &o)?,
            "scarce" => brute_force_families(s, is_scarce, &o)?,
            "intersecting" => brute_force_families(s, is_intersecting_antichain, &o)?,
            _ => brute_force_antichains(s, &o)?,
        };
        out.expect(got == want.into(), || {
            format!("oracle {what}({n}) = {got}, pinned {want}")
        });
    }
    out.within(start.elapsed(), Duration::from_secs(10));
    out.summary = format!(
        "{checked} engine/oracle pairs, 6 pinned values, {:.2?}",
        start.elapsed()
    );
    Ok(out)
}

fn c2_scarce_is_intersecting_antichain() -> Result<Outcome> {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut checks = 0;
    for n in 1..=4 {
        let r = scarce_equivalence_check(scale(n), &opts())?;
        checks += r.checked;
        out.expect(r.passed(), || r.to_string());
    }
    out.within(start.elapsed(), Duration::from_secs(30));
    out.summary = format!("{checks} subfamilies, {:.2?}", start.elapsed());
    Ok(out)
}

fn c3_middle_layer_bound() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut subfamilies = 0u64;
    for n in 1..=5 {
        let s = scale(n);
        let exp = binomial(n, (n + 2) / 2)?;
        let bound = num_bigint::BigUint::from(1u32) << u64::try_from(&exp).expect("small exponent");
        let count = count_intersecting_antichains(s, &opts())?;
        out.expect(count >= bound, || format!("n={n}: {count} < 2^{exp}"));

        let layer = middle_layer_family(s);
        let members = layer.members().to_vec();
        out.expect(members.len() as u64 == u64::try_from(&exp).unwrap(), || {
            format!(
                "n={n}: middle layer has {} members, expected {exp}",
                members.len()
            )
        });
        for mask in 0u64..1 << members.len() {
            subfamilies += 1;
            let sub = SetFamily::new(
                s,
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, m)| *m),
            )?;
            out.expect(is_intersecting_antichain(&sub), || {
                format!("n={n}: {sub} rejected")
            });
        }
    }
    out.summary = format!("bound holds for n=1..5, {subfamilies} middle-layer subfamilies");
    Ok(out)
}

fn c4_compression() -> Result<Outcome> {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut checks = 0;
    for n in 1..=4 {
        let r = verify_compression(scale(n), &opts())?;
        checks += r.checked;
        out.expect(r.passed(), || r.to_string());
    }
    out.within(start.elapsed(), Duration::from_secs(60));
    out.summary = format!("{checks} checks, {:.2?}", start.elapsed());
    Ok(out)
}

fn c5_triples() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut checks = 0;
    for n in 2..=4 {
        let r = verify_triple_claim(scale(n))?;
        checks += r.checked;
        out.expect(r.passed() && r.checked > 0, || r.to_string());
    }
    out.summary = format!("K_3, K_4, K_5: {checks} checks");
    Ok(out)
}

fn c6_extensions() -> Result<Outcome> {
    let mut out = Outcome::new();
    let start = Instant::now();
    let mut sizes = Vec::new();
    for n in 1..=4 {
        let s = scale(n);
        let catalog = enumerate_extensions(s, &opts())?;
        let linear = count_families(s, FamilyKind::Linear, &opts())?;
        out.expect(catalog.report.passed(), || catalog.report.to_string());
        out.expect(
            num_bigint::BigUint::from(catalog.entries.len()) == linear,
            || {
                format!(
                    "K_{}: {} extensions, {linear} linear families",
                    n + 1,
                    catalog.entries.len()
                )
            },
        );
        out.expect(
            catalog
                .entries
                .iter()
                .all(|e| e.extension.element_class() != ElementClass::Coloop),
            || format!("K_{}: coloop extension", n + 1),
        );
        if n == 2 {
            let kinds: Vec<_> = catalog.entries.iter().map(|e| e.extension.kind()).collect();
            let free = kinds.iter().filter(|k| **k == ExtensionKind::Free).count();
            let loops = kinds.iter().filter(|k| **k == ExtensionKind::Loop).count();
            let mut parallel: Vec<_> = kinds
                .iter()
                .filter_map(|k| match k {
                    ExtensionKind::Parallel(i) => Some(*i),
                    _ => None,
                })
                .collect();
            parallel.sort_unstable();
            out.expect(free == 1 && loops == 1 && parallel == [0, 1, 2], || {
                format!("K_3 classification {kinds:?}")
            });
        }
        sizes.push(catalog.entries.len());
    }
    out.within(start.elapsed(), Duration::from_secs(300));
    out.summary = format!("extension counts {sizes:?}, {:.2?}", start.elapsed());
    Ok(out)
}

/// Monotone Boolean functions on `k` variables as truth tables, by direct filter.
fn monotone_functions(k: u32) -> Vec<u64> {
    let points = 1u32 << k;
    (0u64..1 << points)
        .filter(|&f| {
            (0..points).all(|x| f >> x & 1 == 0 || (0..k).all(|i| f >> (x | 1 << i) & 1 == 1))
        })
        .collect()
}

/// `M(k+1)` counts pairs `f ≤ g` of monotone functions on `k` variables.
fn dedekind_by_pairs(fs: &[u64]) -> u64 {
    let mut sorted = fs.to_vec();
    sorted.sort_unstable();
    let mut total = 0;
    for &f in &sorted {
        total += sorted.iter().filter(|&&g| f & g == f).count() as u64;
    }
    total
}

fn c7_antichain_benchmark() -> Result<Outcome> {
    let mut out = Outcome::new();
    let m4 = monotone_functions(4);
    out.expect(m4.len() == 168, || format!("reference M(4) = {}", m4.len()));
    let reference5 = dedekind_by_pairs(&m4);
    let engine5 = count_antichains(scale(5), &opts())?;
    out.expect(engine5 == 7581u32.into(), || {
        format!("count_antichains(5) = {engine5}")
    });
    out.expect(engine5 == reference5.into(), || {
        format!("reference gives {reference5}")
    });

    // the n = 6 value comes from the same pair recursion over the 5-variable functions
    let m5 = monotone_functions_from_pairs(&m4, 4);
    out.expect(m5.len() as u64 == reference5, || {
        format!("{} five-variable functions", m5.len())
    });
    let start = Instant::now();
    let engine6 = count_antichains(scale(6), &opts())?;
    let engine_time = start.elapsed();
    let reference6 = dedekind_by_pairs(&m5);
    out.expect(engine6 == reference6.into(), || {
        format!("n=6: engine {engine6}, reference {reference6}")
    });
    out.within(engine_time, Duration::from_secs(60));
    out.summary = format!("n=5: {engine5}; n=6: {engine6} in {engine_time:.2?}, reference agrees");
    Ok(out)
}

/// Monotone functions on `k+1` variables from those on `k`: the truth table
/// is `f` on points without the new variable and `g` on points with it, `f ≤ g`.
fn monotone_functions_from_pairs(fs: &[u64], k: u32) -> Vec<u64> {
    let half = 1u32 << k;
    let mut out = Vec::new();
    for &f in fs {
        for &g in fs.iter().filter(|&&g| f & g == f) {
            out.push(f | g << half);
        }
    }
    out
}

fn c8_thread_determinism() -> Result<Outcome> {
    let mut out = Outcome::new();
    let mut runs = 0;
    for what in ["linear", "scarce", "antichains", "intersecting"] {
        for n in ["3", "5"] {
            let outputs: Vec<_> = ["1", "4", "16"]
                .iter()
                .map(|t| {
                    runs += 1;
                    let o = Command::new(env!("CARGO_BIN_EXE_clique-ext"))
                        .args(["--threads", t, "count", "--what", what, "-n", n])
                        .env_remove("CLIQUE_EXT_TIME_BUDGET_SECS")
                        .output()
                        .expect("binary runs");
                    (o.status.code(), o.stdout)
                })
                .collect();
            out.expect(outputs[0].0 == Some(0), || {
                format!("{what} n={n} exited {:?}", outputs[0].0)
            });
            out.expect(outputs.windows(2).all(|w| w[0] == w[1]), || {
                format!("{what} n={n} differs across thread counts")
            });
        }
    }
    out.summary = format!("{runs} CLI runs");
    Ok(out)
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "C1 oracle equivalence of all counts, n=1..4",
            c1_oracle_counts,
        ),
        (
            "C2 scarce iff intersecting antichain, n<=4",
            c2_scarce_is_intersecting_antichain,
        ),
        ("C3 middle-layer lower bound, n<=5", c3_middle_layer_bound),
        ("C4 compression backbone, n<=4", c4_compression),
        (
            "C5 flats of corank 2 vs related triples, K_3..K_5",
            c5_triples,
        ),
        (
            "C6 extensions match linear families, K_2..K_5",
            c6_extensions,
        ),
        ("C7 antichain counts n=5 and n=6", c7_antichain_benchmark),
        (
            "C8 thread-count determinism of counting verbs",
            c8_thread_determinism,
        ),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(o) if o.notes.is_empty() => println!("PASS {name}: {}", o.summary),
            Ok(o) => {
                failed += 1;
                println!("FAIL {name}: {}", o.summary);
                for note in o.notes {
                    println!("    {note}");
                }
            }
            Err(e) => {
                failed += 1;
                println!("FAIL {name}: error {e}");
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
