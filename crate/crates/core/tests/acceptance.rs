//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use qfoam::algebra::{check_gfamily_axioms, linear_gfamily, r_tilde};
use qfoam::diagrams::{coloring_count, enumerate_colorings, parse_graph_diagram};
use qfoam::foam::movie::{
    cocycle_invariant, collect_triple_points, load_movie, propagate_coloring, reverse_orientation, seed_index,
    validate_movie, with_r2_pair, InvariantMultiset,
};
use qfoam::foam::spin::{parse_tangle, twist_spin};
use qfoam::foam::Side;
use qfoam::homology::{
    all_generators, boundary, boundary_chain, lifted_theta, mochizuki_theta, render_expansion, verify_cocycle_conditions,
    verify_oriented_conditions, CocycleTable,
};
use std::path::PathBuf;
use std::time::{Duration, Instant};

const THETA_LIMIT: Duration = Duration::from_millis(1);
const CONDITIONS_LIMIT: Duration = Duration::from_secs(5);
const SQUARE_LIMIT: Duration = Duration::from_secs(30);
const HEADLINE_LIMIT: Duration = Duration::from_secs(10);

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn data(name: &str) -> PathBuf {
    root().join("../../data").join(name)
}

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn within(t: Duration, limit: Duration, r: Outcome) -> Outcome {
    let r = r?;
    check(t < limit, format!("{r}, {t:.2?}"), format!("{r}, but took {t:.2?} (limit {limit:?})"))
}

/// Rows of the published value table, all group parts 1.
const THETA_ROWS: [((u8, u8, u8), u8); 12] = [
    ((0, 1, 2), 1),
    ((0, 2, 1), 1),
    ((1, 0, 2), 2),
    ((1, 2, 0), 0),
    ((2, 0, 1), 2),
    ((2, 1, 0), 0),
    ((0, 1, 0), 0),
    ((0, 2, 0), 0),
    ((1, 0, 1), 1),
    ((1, 2, 1), 2),
    ((2, 0, 2), 1),
    ((2, 1, 2), 2),
];

fn theta_table() -> Outcome {
    let t = Instant::now();
    let bad: Vec<_> = THETA_ROWS
        .iter()
        .filter(|&&((x, y, z), v)| lifted_theta((x, 1), (y, 1), (z, 1)) != v || mochizuki_theta(x, y, z) != v)
        .collect();
    within(t.elapsed(), THETA_LIMIT, check(bad.is_empty(), "12/12 rows", format!("mismatched rows {bad:?}")))
}

fn conditions() -> Outcome {
    let t = Instant::now();
    let f = r_tilde();
    let a = verify_cocycle_conditions(&f, &CocycleTable::mochizuki());
    let b = verify_oriented_conditions(&CocycleTable::mochizuki().theta);
    let r = check(
        a.passed() && b.passed(),
        format!("{} + {} instances, no violations", a.checked, b.checked),
        format!("{}{}", a.render(), b.render()),
    );
    within(t.elapsed(), CONDITIONS_LIMIT, r)
}

/// Block sizes of the generator on the left of a golden line.
fn shape_of(line: &str) -> Vec<usize> {
    let lhs = &line[2..line.find(')').unwrap()];
    lhs.split('>').filter(|b| !b.is_empty()).map(|b| b.split(',').count()).collect()
}

fn golden() -> Outcome {
    let mut n = [0; 2];
    let mut bad = vec![];
    for (i, file) in ["boundaries_3chains.txt", "boundaries_4chains.txt"].iter().enumerate() {
        let text = std::fs::read_to_string(root().join("golden").join(file)).map_err(|e| e.to_string())?;
        for line in text.lines().filter(|l| l.starts_with("d(")) {
            n[i] += 1;
            if render_expansion(&shape_of(line)) != line {
                bad.push(line.to_string());
            }
        }
    }
    check(
        n == [4, 8] && bad.is_empty(),
        "4 three-chain and 8 four-chain expansions match",
        format!("counts {n:?}, mismatches {bad:?}"),
    )
}

fn square_zero() -> Outcome {
    let t = Instant::now();
    let f = r_tilde();
    let mut n = 0;
    for d in 1..=4 {
        for g in all_generators(&f, d).into_iter().filter(|g| !g.is_degenerate()) {
            n += 1;
            let b = boundary(&f, &g).map_err(|e| e.to_string())?;
            if !boundary_chain(&f, &b).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("dd({g}) is not zero"));
            }
        }
    }
    within(t.elapsed(), SQUARE_LIMIT, Ok(format!("{n} generators")))
}

fn reduced_sum() -> Outcome {
    let t = |a, b, c| mochizuki_theta(a, b, c) as i32;
    let mut n = 0;
    for x in 0..3u8 {
        for y in 0..3u8 {
            for z in 0..3u8 {
                if x == y || y == z || x == z {
                    continue;
                }
                n += 1;
                let s = (t(x, y, x) - t(y, x, y) + t(z, y, z) - t(y, z, y)).rem_euclid(3);
                if s != 2 {
                    return Err(format!("({x},{y},{z}) gives {s}"));
                }
            }
        }
    }
    check(n == 6, format!("{n} triples of distinct colours"), format!("{n} triples"))
}

const HEADLINE: &str = "60 + 12t + 12t^2";

fn headline() -> Outcome {
    let t = Instant::now();
    let f = r_tilde();
    let g = parse_graph_diagram(&std::fs::read_to_string(data("5_2.graph")).unwrap()).map_err(|e| e.to_string())?;
    let count = coloring_count(&g, &f);
    let (m, stills) = load_movie(&data("5_2_2twist.movie")).map_err(|e| e.to_string())?;
    let r = cocycle_invariant(&m, &stills, &f, &CocycleTable::mochizuki()).map_err(|e| e.to_string())?;
    let ok = r.polynomial == HEADLINE && count == 84;
    within(
        t.elapsed(),
        HEADLINE_LIMIT,
        check(ok, format!("{} with {count} colorings", r.polynomial), format!("got {} with {count} colorings", r.polynomial)),
    )
}

fn generator() -> Outcome {
    let f = r_tilde();
    let t = parse_tangle(&std::fs::read_to_string(data("5_2.tangle")).unwrap()).map_err(|e| e.to_string())?;
    let gen = twist_spin(&t, 2);
    let stills = validate_movie(&gen).map_err(|e| e.to_string())?;
    let r = cocycle_invariant(&gen, &stills, &f, &CocycleTable::mochizuki()).map_err(|e| e.to_string())?;
    let (m, s) = load_movie(&data("5_2_2twist.movie")).map_err(|e| e.to_string())?;
    let want = cocycle_invariant(&m, &s, &f, &CocycleTable::mochizuki()).map_err(|e| e.to_string())?;
    check(r.multiset == want.multiset, r.polynomial.clone(), format!("{} vs {}", r.polynomial, want.polynomial))
}

/// Subgroups of the units mod p, found by closing every subset.
fn unit_subgroups(p: u32) -> Vec<Vec<u32>> {
    let units: Vec<u32> = (1..p).collect();
    let mut out = vec![];
    for mask in 1u32..(1 << units.len()) {
        let s: Vec<u32> = units.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &u)| u).collect();
        if s.contains(&1) && s.iter().all(|a| s.iter().all(|b| s.contains(&(a * b % p)))) {
            out.push(s);
        }
    }
    out
}

fn axiom_suites() -> Outcome {
    let mut families = 0;
    for p in [3u32, 5, 7] {
        for u in unit_subgroups(p) {
            let f = linear_gfamily(p, &u).map_err(|e| format!("p={p} {u:?}: {e}"))?;
            if !check_gfamily_axioms(&f).passed() {
                return Err(format!("p={p} units {u:?} fails"));
            }
            families += 1;
        }
    }
    let base = r_tilde();
    let (n, k) = (base.carrier_size(), base.group().order());
    let (mut mutants, mut killed) = (0, 0);
    for g in 0..k {
        for a in 0..n {
            for b in 0..n {
                for v in (0..n).filter(|&v| v != base.op(g, a, b)) {
                    let mut f = base.clone();
                    f.set_op(g, a, b, v);
                    mutants += 1;
                    killed += usize::from(!check_gfamily_axioms(&f).passed());
                }
            }
        }
    }
    check(
        killed == mutants,
        format!("{families} linear families pass, {killed}/{mutants} mutants killed"),
        format!("{killed}/{mutants} mutants killed"),
    )
}

fn stability() -> Outcome {
    let f = r_tilde();
    let theta = CocycleTable::mochizuki();
    let (m, stills) = load_movie(&data("5_2_2twist.movie")).map_err(|e| e.to_string())?;
    let base = cocycle_invariant(&m, &stills, &f, &theta).map_err(|e| e.to_string())?;
    let seed = seed_index(&m, &stills);
    // the rejoining saddle follows the last turn
    let rejoin = m.events.iter().rposition(|e| e.kind == qfoam::foam::Kind::Saddle && e.new.is_empty()).unwrap() - 1;
    let mut inserted = 0;
    for (layer, side) in [(seed + 1, Side::Left), (seed + 1, Side::Right)] {
        let m2 = with_r2_pair(&m, seed, rejoin, layer, 0, side).map_err(|e| e.to_string())?;
        let s2 = validate_movie(&m2).map_err(|e| e.to_string())?;
        let r = cocycle_invariant(&m2, &s2, &f, &theta).map_err(|e| e.to_string())?;
        if r.multiset != base.multiset {
            return Err(format!("R2 pair changes {} to {}", base.polynomial, r.polynomial));
        }
        inserted += 1;
    }
    // reverse every foam colouring and tally both sides
    let lay = stills[seed].layout();
    let (mut fwd, mut rev) = (InvariantMultiset::new(3), InvariantMultiset::new(3));
    let value = |fc: &Vec<_>| collect_triple_points(&m, &stills, fc).iter().fold(0, |a, tp| (a + tp.value(&f, &theta)) % 3);
    for c in enumerate_colorings(&lay.diagram, &f) {
        let Ok(fcs) = propagate_coloring(&f, &m, &stills, seed, &lay.to_still(&c)) else { continue };
        for fc in fcs {
            fwd.counts[value(&fc) as usize] += 1;
            rev.counts[value(&reverse_orientation(&f, &fc)) as usize] += 1;
        }
    }
    check(
        fwd == base.multiset && rev == fwd.negated(),
        format!("{inserted} R2 insertions keep {}, reversal gives {rev}", base.polynomial),
        format!("forward {fwd}, reversed {rev}"),
    )
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("theta table", theta_table),
        ("cocycle conditions", conditions),
        ("boundary golden files", golden),
        ("boundary squares to zero", square_zero),
        ("reduced sum", reduced_sum),
        ("headline invariant", headline),
        ("generator cross-check", generator),
        ("axiom suites", axiom_suites),
        ("stability", stability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
