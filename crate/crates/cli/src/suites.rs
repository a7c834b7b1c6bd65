//! Theorem-verification batteries behind `genreg verify`.
//!
//! Every suite is a list of named properties; each property runs a list of
//! cases and keeps the failing ones with enough JSON to reproduce them.
//! Cases may run concurrently, but results are collected in case order, so
//! a report depends only on the suite, the seed and the budget.

use std::sync::Arc;

use genreg::abcat::{
    direct_sum, finite_modules, find_retraction, hom_count, image, is_epi, is_mono, is_projective, kernel,
    radical_and_socle, FpObject, HomSet, Morphism,
};
use genreg::coalg;
use genreg::graded::{self, hom_space, GradedModule};
use genreg::regular::{
    central_endomorphisms, central_geninv_with_budget, end_ring_with_budget, generalized_inverse,
    is_generalized_inverse, regular_object_report, transfer_report_cached, PairCache, TransferClause,
};
use genreg::{Error, Result, Ring};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

pub const SUITES: [&str; 8] = [
    "basic-transfer",
    "char-equivalence",
    "direct-sum",
    "central-lemma",
    "regular-objects",
    "end-rings",
    "graded",
    "coalgebra",
];

/// Random triples drawn per direct-sum property.
pub const TRIPLES: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub budget: u64,
}

/// Outcome of one property: cases run and the failures among them.
#[derive(Clone, Debug)]
pub struct Property {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<Json>,
}

impl Property {
    /// Runs `check` on every case; `Some(json)` marks a failure.
    fn run<T: Sync>(name: &'static str, cases: &[T], check: impl Fn(&T) -> Result<Option<Json>> + Sync) -> Result<Self> {
        let outcomes: Vec<Option<Json>> = cases.par_iter().map(&check).collect::<Result<_>>()?;
        Ok(Property {
            name,
            cases: cases.len(),
            failures: outcomes.into_iter().flatten().collect(),
        })
    }

    fn to_json(&self) -> Json {
        json!({"name": self.name, "cases": self.cases, "failures": self.failures})
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<Property>,
}

impl Report {
    pub fn cases(&self) -> usize {
        self.properties.iter().map(|p| p.cases).sum()
    }

    pub fn failures(&self) -> usize {
        self.properties.iter().map(|p| p.failures.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases(),
            "failures": self.failures(),
            "passed": self.passed(),
            "properties": self.properties.iter().map(Property::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs one suite, or every suite in order for `"all"`.
pub fn run(suite: &str, opts: Options) -> Result<Vec<Report>> {
    // pair verdicts are shared between suites; they never depend on order
    let cache = PairCache::new(opts.budget);
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s, opts, &cache)).collect();
    }
    Ok(vec![run_one(suite, opts, &cache)?])
}

/// The JSON document `verify` prints.
pub fn report_json(suite: &str, opts: Options, reports: &[Report]) -> Json {
    if let [only] = reports {
        if only.suite == suite {
            return only.to_json();
        }
    }
    let failures: usize = reports.iter().map(Report::failures).sum();
    json!({
        "suite": suite,
        "seed": opts.seed,
        "cases": reports.iter().map(Report::cases).sum::<usize>(),
        "failures": failures,
        "passed": failures == 0,
        "suites": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    })
}

fn run_one(suite: &str, opts: Options, cache: &PairCache) -> Result<Report> {
    let properties = match suite {
        "basic-transfer" => basic_transfer(opts, cache)?,
        "char-equivalence" => char_equivalence(opts)?,
        "direct-sum" => direct_sums(opts, cache)?,
        "central-lemma" => central_lemma(opts)?,
        "regular-objects" => regular_objects(opts, cache)?,
        "end-rings" => end_rings(opts, cache)?,
        "graded" => graded_suite()?,
        "coalgebra" => coalgebra_suite()?,
        other => return Err(Error::BadSpec(format!("unknown suite `{other}`"))),
    };
    Ok(Report {
        suite: suite.to_string(),
        seed: opts.seed,
        properties,
    })
}

fn z_modules(max_order: u64) -> Result<Vec<FpObject>> {
    finite_modules(Ring::Integer, max_order)
}

fn fail(case: Json) -> Result<Option<Json>> {
    Ok(Some(case))
}

fn pass() -> Result<Option<Json>> {
    Ok(None)
}

// ---------------------------------------------------------------- transfer

fn basic_transfer(opts: Options, cache: &PairCache) -> Result<Vec<Property>> {
    let mods = z_modules(12)?;
    let mut epis = Vec::new();
    let mut monos = Vec::new();
    for u in &mods {
        for v in &mods {
            for f in HomSet::new(u, v, opts.budget)?.iter() {
                if is_epi(&f)? {
                    epis.push(f.clone());
                }
                if is_mono(&f)? {
                    monos.push(f);
                }
            }
        }
    }
    let mut splits = Vec::new();
    for i in &monos {
        if let Some(p) = find_retraction(i)? {
            splits.push((i.clone(), p));
        }
    }
    let check = |clause: TransferClause| -> Result<Option<Json>> {
        let r = transfer_report_cached(&clause, cache)?;
        if r.holds() {
            return pass();
        }
        let data = match &clause {
            TransferClause::Epi { pi, m } => json!({"pi": pi.to_json(), "m": m.to_json()}),
            TransferClause::Mono { i, u } => json!({"i": i.to_json(), "u": u.to_json()}),
            TransferClause::Summand { i, p, m } => json!({"i": i.to_json(), "p": p.to_json(), "m": m.to_json()}),
        };
        fail(json!({"clause": clause.kind(), "data": data,
                    "premise": r.premise, "conclusion": r.conclusion, "witnessed": r.witnessed}))
    };
    let epi_cases: Vec<(&Morphism, &FpObject)> = epis.iter().flat_map(|pi| mods.iter().map(move |m| (pi, m))).collect();
    let mono_cases: Vec<(&Morphism, &FpObject)> =
        monos.iter().flat_map(|i| mods.iter().map(move |u| (i, u))).collect();
    let summand_cases: Vec<(&(Morphism, Morphism), &FpObject)> =
        splits.iter().flat_map(|s| mods.iter().map(move |m| (s, m))).collect();
    Ok(vec![
        Property::run("epi", &epi_cases, |&(pi, m)| {
            check(TransferClause::Epi { pi: pi.clone(), m: m.clone() })
        })?,
        Property::run("mono", &mono_cases, |&(i, u)| {
            check(TransferClause::Mono { i: i.clone(), u: u.clone() })
        })?,
        Property::run("summand", &summand_cases, |&((i, p), m)| {
            check(TransferClause::Summand { i: i.clone(), p: p.clone(), m: m.clone() })
        })?,
    ])
}

// ----------------------------------------------------- characterization

/// A morphism between finite modules as a matrix of residues in normal
/// coordinates.
struct Dense {
    dom: Vec<u64>,
    cod: Vec<u64>,
    /// Row-major, `cod.len() × dom.len()`.
    a: Vec<u64>,
}

fn orders(m: &FpObject) -> Vec<u64> {
    let module = m.as_module().expect("finite module");
    module.orders().iter().map(|o| o.to_u64().expect("finite order")).collect()
}

impl Dense {
    fn new(f: &Morphism) -> Self {
        let (dom, cod) = (orders(f.domain()), orders(f.codomain()));
        let n = f.normal().expect("additive morphism");
        let mut a = Vec::with_capacity(dom.len() * cod.len());
        for i in 0..cod.len() {
            for j in 0..dom.len() {
                let v = n.get(i, j).to_bigint().expect("integer entry");
                a.push(v.to_i64().expect("small entry").rem_euclid(cod[i] as i64) as u64);
            }
        }
        Dense { dom, cod, a }
    }

    fn column(&self, j: usize) -> Vec<u64> {
        (0..self.cod.len()).map(|i| self.a[i * self.dom.len() + j]).collect()
    }
}

/// Element tables of a finite module of order < 256: elements are
/// mixed-radix indices of their normal coordinates (zero is 0).
struct Elements {
    orders: Vec<u64>,
    size: usize,
    add: Vec<u8>,
    exponent: usize,
    /// `times[c * size + x] = c·x` for `c` below the exponent.
    times: Vec<u8>,
}

impl Elements {
    fn new(orders: Vec<u64>) -> Self {
        let size = orders.iter().product::<u64>() as usize;
        assert!(size <= 256, "element tables are for small modules");
        let coords: Vec<Vec<u64>> = (0..size).map(|x| Self::split(&orders, x)).collect();
        let index = |c: &[u64]| c.iter().zip(&orders).fold(0, |acc, (v, o)| acc * o + v) as u8;
        let mut add = Vec::with_capacity(size * size);
        for x in &coords {
            for y in &coords {
                let sum: Vec<u64> = x.iter().zip(y).zip(&orders).map(|((a, b), o)| (a + b) % o).collect();
                add.push(index(&sum));
            }
        }
        let exponent = orders.iter().fold(1u64, |e, &o| num_integer::Integer::lcm(&e, &o)) as usize;
        let mut times = Vec::with_capacity(exponent * size);
        for c in 0..exponent as u64 {
            for x in &coords {
                let v: Vec<u64> = x.iter().zip(&orders).map(|(a, o)| a * c % o).collect();
                times.push(index(&v));
            }
        }
        Elements { orders, size, add, exponent, times }
    }

    fn split(orders: &[u64], mut x: usize) -> Vec<u64> {
        let mut c = vec![0; orders.len()];
        for (k, o) in orders.iter().enumerate().rev() {
            c[k] = x as u64 % o;
            x /= *o as usize;
        }
        c
    }

    fn index(&self, c: &[u64]) -> u8 {
        c.iter().zip(&self.orders).fold(0, |acc, (v, o)| acc * o + v % o) as u8
    }

    /// `Σ c_k · images[k]`.
    fn combine(&self, c: &[u8], images: &[u8]) -> u8 {
        let mut acc = 0u8;
        for (&ck, &g) in c.iter().zip(images) {
            let t = self.times[ck as usize % self.exponent * self.size + g as usize];
            acc = self.add[acc as usize * self.size + t as usize];
        }
        acc
    }
}

/// Whether some `g` among `back` (images of the generators of `M` in `U`)
/// satisfies `f ∘ g ∘ f = f`, checked on the generators of `U`.
fn brute_inverse_exists(f: &Dense, u: &Elements, m: &Elements, back: &[Vec<u8>]) -> bool {
    // f as a table on the elements of U
    let table: Vec<u8> = (0..u.size)
        .map(|x| {
            let c = Elements::split(&u.orders, x);
            let y: Vec<u64> = (0..f.cod.len())
                .map(|i| (0..f.dom.len()).map(|j| f.a[i * f.dom.len() + j] * c[j]).sum::<u64>())
                .collect();
            m.index(&y)
        })
        .collect();
    let targets: Vec<(Vec<u8>, u8)> = (0..f.dom.len())
        .map(|j| {
            let y = f.column(j);
            (y.iter().map(|&v| v as u8).collect(), m.index(&y))
        })
        .collect();
    back.iter().all(|g| g.len() == m.orders.len())
        && back
            .iter()
            .any(|g| targets.iter().all(|(y, yi)| table[u.combine(y, g) as usize] == *yi))
}

fn char_equivalence(opts: Options) -> Result<Vec<Property>> {
    let mods = z_modules(16)?;
    let pairs: Vec<(usize, usize)> = (0..mods.len()).flat_map(|u| (0..mods.len()).map(move |m| (u, m))).collect();
    // one case per pair of objects, covering every morphism between them
    let per_pair = |&(u, m): &(usize, usize)| -> Result<Vec<Json>> {
        let (u, m) = (&mods[u], &mods[m]);
        let (eu, em) = (Elements::new(orders(u)), Elements::new(orders(m)));
        let back: Vec<Vec<u8>> = HomSet::new(m, u, opts.budget)?
            .iter()
            .map(|g| {
                let g = Dense::new(&g);
                (0..g.dom.len()).map(|k| eu.index(&g.column(k))).collect()
            })
            .collect();
        let mut failures = Vec::new();
        for f in HomSet::new(u, m, opts.budget)?.iter() {
            let r = generalized_inverse(&f)?;
            let identities = match &r.h {
                Some(h) => is_generalized_inverse(&f, h)?,
                None => true,
            };
            let kernel_summand = find_retraction(&kernel(&f)?)?.is_some();
            let image_summand = find_retraction(&image(&f)?.image_inclusion)?.is_some();
            let brute = brute_inverse_exists(&Dense::new(&f), &eu, &em, &back);
            let constructive = r.exists();
            if !identities || constructive != (kernel_summand && image_summand) || constructive != brute {
                failures.push(json!({
                    "morphism": f.to_json(),
                    "constructive": constructive,
                    "identities": identities,
                    "kernel_summand": kernel_summand,
                    "image_summand": image_summand,
                    "exhaustive_search": brute,
                }));
            }
        }
        Ok(failures)
    };
    let results: Vec<Vec<Json>> = pairs.par_iter().map(per_pair).collect::<Result<_>>()?;
    let mut cases = 0;
    for &(u, m) in &pairs {
        cases += hom_count(&mods[u], &mods[m])?.to_usize().expect("finite hom-set");
    }
    Ok(vec![Property {
        name: "characterization",
        cases,
        failures: results.into_iter().flatten().collect(),
    }])
}

// ------------------------------------------------------------ direct sums

struct Triple {
    n: u64,
    u: FpObject,
    a: FpObject,
    b: FpObject,
}

/// `count` seeded triples `(U, A, B)` over `Z/n`, `2 ≤ n ≤ 12`, with
/// `|A|·|B| ≤ 16` and `|U| ≤ 16`.
fn triples(rng: &mut ChaCha8Rng, count: usize) -> Result<Vec<Triple>> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(2..=12u64);
        let mods = finite_modules(Ring::modular(n)?, 16)?;
        let size = |m: &FpObject| m.order().and_then(|o| o.to_u64()).expect("finite");
        let u = mods[rng.gen_range(0..mods.len())].clone();
        let a = mods[rng.gen_range(0..mods.len())].clone();
        let fits: Vec<&FpObject> = mods.iter().filter(|b| size(&a) * size(b) <= 16).collect();
        let b = fits[rng.gen_range(0..fits.len())].clone();
        out.push(Triple { n, u, a, b });
    }
    Ok(out)
}

fn direct_sums(opts: Options, cache: &PairCache) -> Result<Vec<Property>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let forward = triples(&mut rng, TRIPLES)?;
    let dual = triples(&mut rng, TRIPLES)?;
    let pair = |u: &FpObject, m: &FpObject| cache.is_regular_pair(u, m);
    let describe = |t: &Triple| json!({"n": t.n, "u": t.u.to_json(), "a": t.a.to_json(), "b": t.b.to_json()});
    let sum_thm = Property::run("direct-sum", &forward, |t| {
        let sum = direct_sum(&[t.a.clone(), t.b.clone()])?.object;
        if pair(&t.u, &t.a)? && pair(&t.u, &t.b)? && !pair(&t.u, &sum)? {
            return fail(describe(t));
        }
        pass()
    })?;
    // roles swapped: U is the fixed target and A ⊕ B the source
    let dual_cor = Property::run("dual-direct-sum", &dual, |t| {
        let sum = direct_sum(&[t.a.clone(), t.b.clone()])?.object;
        if pair(&t.a, &t.u)? && pair(&t.b, &t.u)? && !pair(&sum, &t.u)? {
            return fail(describe(t));
        }
        pass()
    })?;
    // every regular pair met above: each epimorphism U → M has a section
    let mut regular_pairs = Vec::new();
    for t in &forward {
        let sum = direct_sum(&[t.a.clone(), t.b.clone()])?.object;
        for m in [&t.a, &t.b, &sum] {
            regular_pairs.push((t.u.clone(), m.clone()));
        }
    }
    for t in &dual {
        let sum = direct_sum(&[t.a.clone(), t.b.clone()])?.object;
        for u in [&t.a, &t.b, &sum] {
            regular_pairs.push((u.clone(), t.u.clone()));
        }
    }
    let epi_split = Property::run("epi-splitting", &regular_pairs, |(u, m)| {
        if !pair(u, m)? {
            return pass();
        }
        for f in HomSet::new(u, m, opts.budget)?.iter() {
            if is_epi(&f)? && genreg::abcat::find_section(&f)?.is_none() {
                return fail(json!({"epimorphism": f.to_json()}));
            }
        }
        pass()
    })?;
    Ok(vec![sum_thm, dual_cor, epi_split])
}

// ----------------------------------------------------------- central lemma

fn central_lemma(opts: Options) -> Result<Vec<Property>> {
    let mut cases = Vec::new();
    for m in z_modules(16)? {
        cases.extend(central_endomorphisms(&m, opts.budget)?);
    }
    Ok(vec![Property::run("central-lemma", &cases, |alpha| {
        let r = central_geninv_with_budget(alpha, opts.budget)?;
        let works = match &r.beta {
            Some(b) => {
                let aba = alpha.after(b)?.after(alpha)?;
                aba == *alpha
            }
            None => true,
        };
        if r.beta.is_some() != r.decomposed || !works {
            return fail(json!({
                "alpha": alpha.to_json(),
                "beta": r.beta.as_ref().map(Morphism::to_json),
                "decomposed": r.decomposed,
            }));
        }
        pass()
    })?])
}

// --------------------------------------------------------- regular objects

fn is_squarefree(n: u64) -> bool {
    genreg::exact::factorize(n).iter().all(|&(_, k)| k == 1)
}

/// Over `Z/n`, whether `M` is a quotient of `U^k` for a projective `U`:
/// prime by prime, `M_p` needs at most `k · r_p` cyclic factors where `U_p`
/// is free of rank `r_p` over `Z/p^a`.
fn quotient_of_power(u: &FpObject, m: &FpObject, k: usize) -> bool {
    let count = |x: &FpObject, p: u64| {
        x.as_module()
            .expect("module")
            .invariant_factors()
            .iter()
            .filter(|d| (*d % p).to_u64() == Some(0))
            .count()
    };
    let n = match u.base() {
        Some(Ring::Modular(n)) => n,
        _ => return false,
    };
    genreg::exact::factorize(n).iter().all(|&(p, _)| count(m, p) <= k * count(u, p))
}

fn regular_objects(opts: Options, cache: &PairCache) -> Result<Vec<Property>> {
    let mut modular = Vec::new();
    for n in 2..=12u64 {
        for m in finite_modules(Ring::modular(n)?, 16)? {
            modular.push((n, m));
        }
    }
    let regular = |m: &FpObject| -> Result<bool> { Ok(regular_object_report(m, opts.budget)?.regular) };
    let consequences = Property::run("regular-consequences", &modular, |(n, m)| {
        if !regular(m)? {
            return pass();
        }
        let rs = radical_and_socle(m)?;
        let end = end_ring_with_budget(m, opts.budget)?;
        let checks = [
            ("radical-zero", rs.radical.domain().is_zero()),
            ("socle-everything", is_epi(&rs.socle)?),
            ("center-regular", end.center()?.is_vn_regular()?),
            ("end-semiprime", end.is_semiprime()),
            ("end-regular", end.is_vn_regular()?),
        ];
        let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
        if failed.is_empty() {
            pass()
        } else {
            fail(json!({"n": n, "m": m.to_json(), "failed": failed}))
        }
    })?;
    let ns: Vec<u64> = (2..=12).collect();
    let squarefree = Property::run("squarefree-equivalence", &ns, |&n| {
        let mut all = true;
        for (k, m) in &modular {
            if *k == n && !regular(m)? {
                all = false;
                break;
            }
        }
        if all != is_squarefree(n) {
            return fail(json!({"n": n, "all_regular": all}));
        }
        pass()
    })?;
    let integral = z_modules(16)?;
    let torsion = Property::run("torsion-not-regular", &integral, |m| {
        if regular(m)? == m.is_zero() {
            pass()
        } else {
            fail(json!({"m": m.to_json()}))
        }
    })?;
    // U projective, M U-regular and a quotient of U^k (k ≤ 3) ⟹ M projective
    let mut proj_cases = Vec::new();
    for (i, (n, u)) in modular.iter().enumerate() {
        if is_projective(u)? && !u.is_zero() {
            for (k, m) in &modular[..] {
                if k == n && quotient_of_power(u, m, 3) {
                    proj_cases.push((i, m.clone()));
                }
            }
        }
    }
    let projectivity = Property::run("projectivity", &proj_cases, |(i, m)| {
        let u = &modular[*i].1;
        if cache.is_regular_pair(u, m)? && !is_projective(m)? {
            return fail(json!({"u": u.to_json(), "m": m.to_json()}));
        }
        pass()
    })?;
    Ok(vec![consequences, squarefree, torsion, projectivity])
}

// --------------------------------------------------------------- end rings

fn end_rings(opts: Options, cache: &PairCache) -> Result<Vec<Property>> {
    let mods = z_modules(16)?;
    Ok(vec![Property::run("end-ring-criterion", &mods, |u| {
        let pair = cache.is_regular_pair(u, u)?;
        let ring = end_ring_with_budget(u, opts.budget)?.is_vn_regular()?;
        if pair != ring {
            return fail(json!({"u": u.to_json(), "regular_pair": pair, "vn_regular": ring}));
        }
        pass()
    })?])
}

// ------------------------------------------------------------------ graded

fn graded_suite() -> Result<Vec<Property>> {
    let family = graded::family();
    let member = |m: &graded::FamilyMember| json!({"name": m.name, "algebra": m.algebra.to_json()});
    let per_member = |check: fn(&graded::GradedAlgebra) -> Result<Option<Json>>| {
        move |m: &graded::FamilyMember| -> Result<Option<Json>> {
            Ok(check(&m.algebra)?.map(|detail| json!({"member": member(m), "detail": detail})))
        }
    };
    let sigmas = |r: &graded::GradedAlgebra| 0..r.group().order();
    Ok(vec![
        Property::run("gr-regular-iff-suspensions", &family, per_member(|r| {
            let gr = graded::is_gr_regular(r)?;
            let susp = (0..r.group().order()).map(|s| graded::is_suspension_regular(r, s)).collect::<Result<Vec<_>>>()?;
            Ok((susp.iter().all(|&x| x) != gr).then(|| json!({"gr_regular": gr, "suspensions": susp})))
        }))?,
        Property::run("gr-regular-iff-smash-regular", &family, per_member(|r| {
            let gr = graded::is_gr_regular(r)?;
            let smash = graded::smash_product(r)?.is_vn_regular()?;
            Ok((gr != smash).then(|| json!({"gr_regular": gr, "smash_regular": smash})))
        }))?,
        Property::run("smash-matches-end-gr", &family, per_member(|r| {
            let s = graded::smash_product(r)?;
            let e = graded::end_gr_of_u(r)?;
            let a = (s.order(), s.is_vn_regular()?, s.is_semiprime());
            let b = (e.order(), e.is_vn_regular()?, e.is_semiprime());
            Ok((a != b).then(|| json!({"smash": [a.0, a.1, a.2], "end_gr": [b.0, b.1, b.2]})))
        }))?,
        Property::run("components", &family, per_member(|r| {
            let gr = graded::is_gr_regular(r)?;
            let comps = (0..r.group().order()).map(|s| graded::is_re_regular_component(r, s)).collect::<Result<Vec<_>>>()?;
            let all = comps.iter().all(|&x| x);
            let strong = graded::is_strongly_graded(r);
            let bad = (gr && !all) || (strong && all && !gr);
            Ok(bad.then(|| json!({"gr_regular": gr, "components": comps, "strongly_graded": strong})))
        }))?,
        Property::run("semiprime-ends", &family, per_member(|r| {
            if !graded::is_gr_regular(r)? {
                return Ok(None);
            }
            let re = graded::end_re_of_r(r)?.is_semiprime();
            let gr = graded::end_gr_of_u(r)?.is_semiprime();
            Ok((!re || !gr).then(|| json!({"end_re_semiprime": re, "end_gr_semiprime": gr})))
        }))?,
        Property::run("hom-components", &family, |m| {
            let r = &m.algebra;
            let reg = GradedModule::regular(&Arc::new(r.clone()));
            for s in sigmas(r) {
                let homs = hom_space(&reg, &reg.suspension(s)?)?.cardinality();
                let comp = r.p().checked_pow(r.component(s).len() as u32);
                if homs != comp {
                    return fail(json!({"member": member(m), "sigma": s, "homs": homs, "component": comp}));
                }
            }
            pass()
        })?,
    ])
}

// --------------------------------------------------------------- coalgebra

fn coalgebra_suite() -> Result<Vec<Property>> {
    let family = coalg::family();
    let member = |m: &coalg::CoalgebraMember| json!({"name": m.name, "coalgebra": m.coalgebra.to_json()});
    Ok(vec![
        Property::run("cosemisimple-iff-regular", &family, |m| {
            let c = &m.coalgebra;
            let (a, b) = (coalg::is_cosemisimple(c)?, coalg::is_regular_comodule_self(c)?);
            if a != b {
                return fail(json!({"member": member(m), "cosemisimple": a, "regular": b}));
            }
            pass()
        })?,
        Property::run("radical-nilpotent", &family, |m| {
            if coalg::radical_nilpotency(&m.coalgebra)?.is_none() {
                return fail(json!({"member": member(m)}));
            }
            pass()
        })?,
        Property::run("semisimple-dual-regular", &family, |m| {
            let c = &m.coalgebra;
            if coalg::is_cosemisimple(c)? && !c.dual().to_ring()?.is_vn_regular()? {
                return fail(json!({"member": member(m)}));
            }
            pass()
        })?,
    ])
}
