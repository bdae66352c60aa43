//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use srlin::cohomology::{cohomology, CohomologyTable};
use srlin::defect::{componentwise_linearity_conditions, linearity_defect_ideal};
use srlin::io::InputDocument;
use srlin::linear_part::{
    betti_table, build_linear_part, koszul_slice_check, two_linear_strand_basis, LinearPartComplex,
};
use srlin::oracle::{compare_with_oracle, linear_part_of_resolution, minimal_free_resolution};
use srlin::random::corpus;
use srlin::simplicial::{complex_from_ideal, polarize};
use srlin::{Field, MonomialIdeal, SimplicialComplex, VertexSet};

const CORPUS_SEED: u64 = 1729;
const CORPUS_SIZE: usize = 240;
const PRIMES: [u64; 2] = [2, 32003];

fn set(labels: &[usize]) -> VertexSet {
    VertexSet::from_labels(20, labels.iter().copied()).unwrap()
}

fn example() -> SimplicialComplex {
    let ideal = MonomialIdeal::new(
        5,
        vec![
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![0, 1, 1, 1, 0],
            vec![0, 1, 1, 0, 1],
        ],
    )
    .unwrap();
    complex_from_ideal(&ideal).unwrap()
}

fn fields() -> Vec<Field> {
    PRIMES.iter().map(|&p| Field::new(p).unwrap()).collect()
}

fn instances() -> Vec<SimplicialComplex> {
    corpus(CORPUS_SEED, CORPUS_SIZE).unwrap()
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn example_betti() -> Check {
    let start = Instant::now();
    let b = betti_table(&example(), Field::default()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(1))?;
    ensure(
        b.ranks() == vec![1, 4, 4, 1],
        format!("ranks {:?}", b.ranks()),
    )?;
    let expected: [Vec<VertexSet>; 4] = [
        vec![VertexSet::EMPTY],
        vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3, 4]), set(&[2, 3, 5])],
        vec![
            set(&[1, 2, 3]),
            set(&[1, 2, 3, 4]),
            set(&[1, 2, 3, 5]),
            set(&[2, 3, 4, 5]),
        ],
        vec![VertexSet::full(5)],
    ];
    for (i, degrees) in expected.iter().enumerate() {
        ensure(
            &b.degrees(i) == degrees,
            format!("degrees at step {i}: {:?}", b.degrees(i)),
        )?;
    }
    Ok(format!("ranks (1,4,4,1) in {:?}", start.elapsed()))
}

fn arrow_diagram() -> Check {
    let lp = build_linear_part(&example(), Field::default()).map_err(|e| e.to_string())?;
    let got: BTreeSet<(VertexSet, VertexSet)> = lp.nonzero_arrows().into_iter().collect();
    let expected: BTreeSet<(VertexSet, VertexSet)> = [
        (&[1, 2, 3, 4, 5][..], &[1, 2, 3, 4][..]),
        (&[1, 2, 3, 4, 5], &[1, 2, 3, 5]),
        (&[1, 2, 3, 4, 5], &[2, 3, 4, 5]),
        (&[1, 2, 3, 5], &[2, 3, 5]),
        (&[2, 3, 4, 5], &[2, 3, 5]),
        (&[2, 3, 4, 5], &[2, 3, 4]),
        (&[1, 2, 3, 4], &[2, 3, 4]),
        (&[1, 2, 3], &[1, 2]),
        (&[1, 2, 3], &[1, 3]),
    ]
    .iter()
    .map(|(a, b)| (set(a), set(b)))
    .collect();
    ensure(got == expected, format!("arrows {got:?}"))?;
    Ok("9 arrows".into())
}

fn froberg_series() -> Check {
    let start = Instant::now();
    for f in fields() {
        for n in 4..=8 {
            let ld = linearity_defect_ideal(&SimplicialComplex::cycle(n).unwrap(), f)
                .map_err(|e| e.to_string())?
                .ld_ideal;
            ensure(
                ld == n - 3,
                format!("{n}-cycle over GF({}): ld = {ld}", f.p()),
            )?;
        }
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "ld(C_n) = n - 3 for n = 4..8 in {:?}",
        start.elapsed()
    ))
}

fn oracle_equivalence() -> Check {
    let start = Instant::now();
    let mut runs = 0;
    for c in instances() {
        for f in fields() {
            let cmp = compare_with_oracle(&c, f, c.n()).map_err(|e| e.to_string())?;
            let k = &cmp.check;
            ensure(
                k.betti_match && k.nu_match && k.ld_match,
                format!("{:?} over GF({}): {:?}", c.facets(), f.p(), k.mismatches),
            )?;
            runs += 1;
        }
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!(
        "{runs} runs, zero mismatches, {:?}",
        start.elapsed()
    ))
}

fn structural_invariants() -> Check {
    let mut slices = 0;
    for c in instances() {
        for f in fields() {
            let table = CohomologyTable::new(&c, f);
            let lp = LinearPartComplex::from_table(&table).map_err(|e| e.to_string())?;
            lp.check_square_zero().map_err(|e| e.to_string())?;
            let r = minimal_free_resolution(&c, f, c.n()).map_err(|e| e.to_string())?;
            linear_part_of_resolution(&r).map_err(|e| e.to_string())?;
            for u in VertexSet::full(c.n()).subsets() {
                ensure(
                    koszul_slice_check(&c, u, f),
                    format!("koszul slice {u} of {:?}", c.facets()),
                )?;
                slices += 1;
            }
        }
    }
    Ok(format!(
        "d∘d = 0 and linear composites vanish everywhere; {slices} Koszul slices"
    ))
}

fn componentwise_linearity() -> Check {
    for c in instances() {
        for f in fields() {
            let r = componentwise_linearity_conditions(&c, f).map_err(|e| e.to_string())?;
            ensure(
                r.consistent(),
                format!("{:?} over GF({}): {:?}", c.facets(), f.p(), r.verdicts()),
            )?;
        }
    }
    let f = Field::default();
    let square = componentwise_linearity_conditions(&SimplicialComplex::cycle(4).unwrap(), f)
        .map_err(|e| e.to_string())?;
    ensure(square.verdicts() == [false; 4], "4-cycle verdicts")?;
    for c in &square.conditions[2..] {
        let ce = c.counterexample.as_ref().ok_or("missing 4-cycle witness")?;
        let faces: BTreeSet<VertexSet> = ce.data.iter().map(|t| t.face).collect();
        let hollow: BTreeSet<VertexSet> =
            [set(&[1, 2]), set(&[2, 3]), set(&[3, 4]), set(&[1, 4])].into();
        ensure(
            ce.set == VertexSet::full(4) && faces == hollow,
            "hollow-square witness",
        )?;
    }
    let ex = componentwise_linearity_conditions(&example(), f).map_err(|e| e.to_string())?;
    ensure(ex.verdicts() == [true; 4], "example verdicts")?;
    Ok(format!(
        "{} instances consistent; square false, example true",
        2 * CORPUS_SIZE
    ))
}

/// Non-squarefree ideals in at most 3 variables with exponents up to 2,
/// from a fixed linear congruential stream.
fn small_monomial_ideals(count: usize) -> Vec<MonomialIdeal> {
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    let mut next = move |m: u64| {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) % m
    };
    (0..count)
        .map(|_| {
            let n = 2 + next(2) as usize;
            let gens = (0..1 + next(3))
                .map(|_| (0..n).map(|_| next(3) as u32).collect::<Vec<u32>>())
                .filter(|g| g.iter().any(|&e| e > 0))
                .collect();
            MonomialIdeal::new(n, gens).unwrap()
        })
        .collect()
}

fn unit_strand() -> Check {
    let mut complexes = instances();
    let mut polarized = 0;
    for ideal in small_monomial_ideals(40) {
        if ideal.is_zero() {
            continue;
        }
        let (polar, _) = polarize(&ideal).map_err(|e| e.to_string())?;
        complexes.push(complex_from_ideal(&polar).map_err(|e| e.to_string())?);
        polarized += 1;
    }
    for c in &complexes {
        for f in fields() {
            let r = two_linear_strand_basis(c, f).map_err(|e| format!("{:?}: {e}", c.facets()))?;
            ensure(
                r.unit_coefficients && r.invertible,
                format!("{:?}", c.facets()),
            )?;
        }
    }
    Ok(format!(
        "{} complexes ({polarized} polarized), coefficients in {{-1,0,1}}",
        complexes.len()
    ))
}

/// Independent dimension of `H̃^1` from two coboundary ranks mod p.
fn h1_by_hand(c: &SimplicialComplex, p: u64) -> usize {
    let faces = c.faces();
    let of_size = |k: usize| {
        faces
            .iter()
            .copied()
            .filter(|f| f.len() == k)
            .collect::<Vec<_>>()
    };
    let (v, e, t) = (of_size(1), of_size(2), of_size(3));
    let rank = |rows: &[VertexSet], cols: &[VertexSet]| -> usize {
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                cols.iter()
                    .map(|c| {
                        if !c.is_subset(*r) {
                            return 0;
                        }
                        let missing = r.difference(*c).to_vec()[0];
                        let below = c.iter().filter(|&x| x < missing).count();
                        if below % 2 == 0 {
                            1
                        } else {
                            p - 1
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..cols.len() {
            let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = (1..p).find(|x| x * m[rank][col] % p == 1).unwrap();
            for r in 0..m.len() {
                if r != rank && m[r][col] != 0 {
                    let factor = m[r][col] * inv % p;
                    let pivot_row = m[rank].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x = (*x + p - factor * y % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    };
    e.len() - rank(&t, &e) - rank(&e, &v)
}

fn projective_plane() -> Check {
    let facets: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    let rp2 = SimplicialComplex::from_facets(6, facets.iter().map(|f| set(f))).unwrap();
    let full = VertexSet::full(6);
    let mut dims = Vec::new();
    for p in PRIMES {
        let f = Field::new(p).unwrap();
        let ours = cohomology(&rp2, full, 1, f).dim();
        let by_hand = h1_by_hand(&rp2, p);
        ensure(
            ours == by_hand,
            format!("GF({p}): {ours} vs independent {by_hand}"),
        )?;
        dims.push(ours);
    }
    ensure(dims == vec![1, 0], format!("H̃^1 dims {dims:?}"))?;
    let b2 = betti_table(&rp2, Field::new(2).unwrap()).map_err(|e| e.to_string())?;
    let b0 = betti_table(&rp2, Field::default()).map_err(|e| e.to_string())?;
    ensure(b2 != b0, "Betti tables agree")?;
    ensure(
        b2.get(4, full) == 1 && b0.get(4, full) == 0,
        "β_{4,[6]} should be 1 over GF(2) only",
    )?;
    Ok("H̃^1 = 1 over GF(2), 0 over GF(32003); Betti tables differ".into())
}

fn temp_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("srlin-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn cli_determinism() -> Check {
    let dir = temp_dir();
    let input = dir.join("corpus.jsonl");
    let lines: Vec<String> = instances()
        .iter()
        .map(|c| serde_json::to_string(&InputDocument::from_complex(c)).unwrap())
        .collect();
    std::fs::write(&input, lines.join("\n") + "\n").unwrap();
    let commands: [&[&str]; 6] = [
        &["betti"],
        &["linpart"],
        &["linpart", "--dot"],
        &["lindef"],
        &["cwl"],
        &["oracle", "--verify"],
    ];
    let run = |args: &[&str], p: u64, jobs: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_srlin"))
            .args(args)
            .args([
                "--input",
                input.to_str().unwrap(),
                "--char",
                &p.to_string(),
                "--jobs",
                jobs,
            ])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            out.status.success(),
            format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)),
        )?;
        Ok(out.stdout)
    };
    let mut compared = 0;
    for args in commands {
        for p in PRIMES {
            let a = run(args, p, "1")?;
            let b = run(args, p, "1")?;
            let c = run(args, p, "4")?;
            ensure(
                a == b,
                format!("{args:?} over GF({p}) differs between runs"),
            )?;
            ensure(
                a == c,
                format!("{args:?} over GF({p}) differs between --jobs 1 and 4"),
            )?;
            compared += 1;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{compared} command/prime pairs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("example Betti table", example_betti),
        ("linear part arrow diagram", arrow_diagram),
        ("cycle linearity defects", froberg_series),
        (
            "oracle equivalence on the random corpus",
            oracle_equivalence,
        ),
        ("structural invariants", structural_invariants),
        (
            "componentwise-linearity criteria agree",
            componentwise_linearity,
        ),
        ("2-linear strand has unit coefficients", unit_strand),
        ("characteristic sensitivity (RP^2)", projective_plane),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name} ({elapsed:.2?}): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name} ({elapsed:.2?}): {detail}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
