//! Acceptance run: one line per criterion, each under a pinned time limit.
//! Verdicts of the library are compared against oracles written here from
//! scratch (element tables, plain integer arithmetic).

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use genreg::abcat::{FpObject, HomSet, Morphism, DEFAULT_BUDGET};
use genreg::regular::{end_ring, generalized_inverse, is_regular_pair};
use genreg::Ring;
use genreg_cli::suites::{self, Options};
use num_traits::ToPrimitive;

type Verdict = Result<String, String>;

// ---------------------------------------------------------------------------
// oracle: finite abelian groups as element tables

/// Invariant factor chains `d_1 | d_2 | …` with `d_1 > 1` and product `n`.
fn invariant_factors(n: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, prev: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (2..=rest).filter(|d| rest % d == 0 && d % prev == 0) {
            acc.push(d);
            go(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut vec![], &mut out);
    out
}

fn groups_up_to(max: u64) -> Vec<FpObject> {
    (1..=max)
        .flat_map(invariant_factors)
        .map(|ds| FpObject::cyclic(Ring::Integer, if ds.is_empty() { &[1] } else { &ds }).unwrap())
        .collect()
}

fn normal_orders(m: &FpObject) -> Vec<u64> {
    match m {
        FpObject::Vect { ring, dim } => vec![ring.modulus().unwrap(); *dim],
        _ => m.as_module().unwrap().orders().iter().map(|o| o.to_u64().unwrap()).collect(),
    }
}

struct Group {
    orders: Vec<u64>,
    size: usize,
    add: Vec<u16>,
    coords: Vec<Vec<u64>>,
    exponent: u64,
    /// `times[c * size + x] = c·x` for `c` below the exponent.
    times: Vec<u16>,
}

impl Group {
    fn new(orders: Vec<u64>) -> Self {
        let size = orders.iter().product::<u64>() as usize;
        let mut add = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                let (a, b) = (Self::coords_of(&orders, x), Self::coords_of(&orders, y));
                let s: Vec<u64> = a.iter().zip(&b).zip(&orders).map(|((p, q), o)| (p + q) % o).collect();
                add[x * size + y] = Self::index_of(&orders, &s) as u16;
            }
        }
        let coords: Vec<Vec<u64>> = (0..size).map(|x| Self::coords_of(&orders, x)).collect();
        let exponent = orders.iter().fold(1, |e, &o| num_integer::lcm(e, o));
        let mut times = vec![0; exponent as usize * size];
        for x in 0..size {
            for c in 1..exponent as usize {
                times[c * size + x] = add[times[(c - 1) * size + x] as usize * size + x];
            }
        }
        Group { orders, size, add, coords, exponent, times }
    }

    fn coords_of(orders: &[u64], mut x: usize) -> Vec<u64> {
        let mut c = vec![0; orders.len()];
        for k in (0..orders.len()).rev() {
            c[k] = x as u64 % orders[k];
            x /= orders[k] as usize;
        }
        c
    }

    fn index_of(orders: &[u64], c: &[u64]) -> usize {
        c.iter().zip(orders).fold(0, |acc, (v, o)| acc * *o as usize + (*v % *o) as usize)
    }

    fn coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    fn multiple(&self, c: u64, x: usize) -> usize {
        self.times[(c % self.exponent) as usize * self.size + x] as usize
    }

    /// `Σ c_k x_k`.
    fn combine(&self, c: &[u64], xs: &[usize]) -> usize {
        c.iter().zip(xs).fold(0, |acc, (&ck, &x)| self.add[acc * self.size + self.multiple(ck, x)] as usize)
    }

    fn order_of(&self, x: usize) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.add[y * self.size + x] as usize;
            k += 1;
        }
        k
    }
}

/// All homomorphisms `A → B` as generator images: `x_i` with `a_i x_i = 0`.
fn oracle_homs(a: &Group, b: &Group) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &o in &a.orders {
        let ok: Vec<usize> = (0..b.size).filter(|&x| o % b.order_of(x) == 0).collect();
        out = out.into_iter().flat_map(|v| ok.iter().map(move |&x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Generator images of a library morphism, read off its matrix.
fn images(f: &Morphism, cod: &Group) -> Vec<usize> {
    let m = f.normal().unwrap();
    (0..m.cols())
        .map(|j| {
            let c: Vec<u64> = (0..m.rows())
                .map(|i| m.get(i, j).to_bigint().unwrap().to_i64().unwrap().rem_euclid(cod.orders[i] as i64) as u64)
                .collect();
            Group::index_of(&cod.orders, &c)
        })
        .collect()
}

/// `f g f = f` on the generators of `U`.
fn is_inner_inverse(u: &Group, m: &Group, f: &[usize], g: &[usize]) -> bool {
    (0..u.orders.len()).all(|j| {
        let y = f[j];
        let back = u.combine(m.coords(y), g);
        m.combine(u.coords(back), f) == y
    })
}

// ---------------------------------------------------------------------------
// criteria

fn field_completeness() -> Verdict {
    let mut count = 0;
    for (p, max_dim) in [(2u64, 3usize), (3, 2)] {
        let field = Ring::prime(p).map_err(|e| e.to_string())?;
        for a in 0..=max_dim {
            for b in 0..=max_dim {
                let (va, vb) = (FpObject::vect(field, a).unwrap(), FpObject::vect(field, b).unwrap());
                let (ga, gb) = (Group::new(vec![p; a]), Group::new(vec![p; b]));
                let backs = oracle_homs(&gb, &ga);
                let homs = HomSet::new(&va, &vb, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                if homs.len() as usize != oracle_homs(&ga, &gb).len() {
                    return Err(format!("Hom(F{p}^{a}, F{p}^{b}) has the wrong size"));
                }
                for f in homs.iter() {
                    let fi = images(&f, &gb);
                    if !backs.iter().any(|g| is_inner_inverse(&ga, &gb, &fi, g)) {
                        return Err(format!("oracle found no inverse over F{p}: {}", f.to_json()));
                    }
                    let r = generalized_inverse(&f).map_err(|e| e.to_string())?;
                    let h = r.h.ok_or_else(|| format!("no inverse returned over F{p}: {}", f.to_json()))?;
                    let hi = images(&h, &ga);
                    if !is_inner_inverse(&ga, &gb, &fi, &hi) || !is_inner_inverse(&gb, &ga, &hi, &fi) {
                        return Err(format!("invalid inverse over F{p}: {}", f.to_json()));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} linear maps, all with valid generalized inverses"))
}

fn characterization() -> Verdict {
    let groups = groups_up_to(16);
    let tables: Vec<Group> = groups.iter().map(|g| Group::new(normal_orders(g))).collect();
    let (mut count, mut with_inverse) = (0, 0);
    for (u, gu) in groups.iter().zip(&tables) {
        for (m, gm) in groups.iter().zip(&tables) {
            let backs = oracle_homs(gm, gu);
            let homs = HomSet::new(u, m, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if homs.len() as usize != oracle_homs(gu, gm).len() {
                return Err(format!("Hom size mismatch for {:?} → {:?}", gu.orders, gm.orders));
            }
            for f in homs.iter() {
                let fi = images(&f, gm);
                let brute = backs.iter().any(|g| is_inner_inverse(gu, gm, &fi, g));
                let r = generalized_inverse(&f).map_err(|e| e.to_string())?;
                if r.h.is_some() != brute {
                    return Err(format!("verdicts differ (search: {brute}) on {}", f.to_json()));
                }
                if let Some(h) = &r.h {
                    if !is_inner_inverse(gu, gm, &fi, &images(h, gu)) {
                        return Err(format!("returned h fails f h f = f on {}", f.to_json()));
                    }
                    with_inverse += 1;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} morphisms over {} groups, {with_inverse} with inverses", groups.len()))
}

fn suite(name: &str, expect_props: &[(&str, usize)]) -> Verdict {
    let reports = suites::run(name, Options { seed: 1, budget: DEFAULT_BUDGET }).map_err(|e| e.to_string())?;
    let report = &reports[0];
    for &(prop, min_cases) in expect_props {
        let p = report.properties.iter().find(|p| p.name == prop).ok_or_else(|| format!("missing property {prop}"))?;
        if p.cases < min_cases {
            return Err(format!("{prop}: only {} cases", p.cases));
        }
    }
    if !report.passed() {
        let bad: Vec<String> = report
            .properties
            .iter()
            .filter(|p| !p.failures.is_empty())
            .map(|p| format!("{} ({} failures, first {})", p.name, p.failures.len(), p.failures[0]))
            .collect();
        return Err(bad.join("; "));
    }
    Ok(format!("{} cases, 0 failures", report.cases()))
}

fn end_ring_criterion() -> Verdict {
    let groups = groups_up_to(16);
    for u in &groups {
        let exponent = normal_orders(u).into_iter().fold(1, num_integer::lcm);
        let squarefree = (2..=exponent).all(|d| exponent % (d * d) != 0);
        let pair = is_regular_pair(u, u).map_err(|e| e.to_string())?;
        let vn = end_ring(u).map_err(|e| e.to_string())?.is_vn_regular().map_err(|e| e.to_string())?;
        if pair != vn || vn != squarefree {
            return Err(format!("{:?}: U-regular {pair}, End vn-regular {vn}, squarefree exponent {squarefree}", normal_orders(u)));
        }
    }
    suite("end-rings", &[])?;
    Ok(format!("{} groups", groups.len()))
}

fn determinism() -> Verdict {
    let exe = env!("CARGO_BIN_EXE_genreg");
    let run = |threads: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(exe)
            .args(["verify", "all", "--seed", "1"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit {:?} with {threads} threads", out.status.code()));
        }
        Ok(out.stdout)
    };
    let a = run("1")?;
    let b = run("1")?;
    let c = run("4")?;
    if a != b {
        return Err("two runs differ".into());
    }
    if a != c {
        return Err("1 and 4 threads differ".into());
    }
    Ok(format!("3 runs, {} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Verdict>)> = vec![
        ("field completeness", 30, Box::new(field_completeness)),
        ("characterization", 120, Box::new(characterization)),
        ("direct sum and dual", 120, Box::new(|| suite("direct-sum", &[("direct-sum", 200), ("dual-direct-sum", 200)]))),
        ("transfer clauses", 120, Box::new(|| suite("basic-transfer", &[]))),
        ("end-ring criterion", 60, Box::new(end_ring_criterion)),
        ("central lemma", 60, Box::new(|| suite("central-lemma", &[]))),
        ("regular-object consequences", 120, Box::new(|| suite("regular-objects", &[]))),
        ("graded equivalences", 180, Box::new(|| suite("graded", &[]))),
        ("coalgebra theorem", 60, Box::new(|| suite("coalgebra", &[]))),
        ("verify all determinism", 600, Box::new(determinism)),
    ];
    // optional criterion numbers select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut ok = true;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let verdict = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let line = match (&verdict, in_time) {
            (Ok(detail), true) => format!("PASS {:>2} {name}: {detail}", i + 1),
            (Ok(detail), false) => format!("FAIL {:>2} {name}: over the {limit} s limit ({detail})", i + 1),
            (Err(why), _) => format!("FAIL {:>2} {name}: {why}", i + 1),
        };
        ok &= verdict.is_ok() && in_time;
        println!("{line} [{:.1} s / {limit} s]", elapsed.as_secs_f64());
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
