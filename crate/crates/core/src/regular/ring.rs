use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value as Json};

use crate::abcat::{int_matrix, solve_congruences};
use crate::error::{Error, Result};
use crate::exact::is_prime;

/// Largest ring kept as explicit addition and multiplication tables.
pub const TABLE_LIMIT: u64 = 1024;

/// Axioms are checked on every triple up to this order, on a seeded sample
/// above it.
const FULL_CHECK_LIMIT: u64 = 256;

/// A finite ring whose elements are the indices `0..order`, 0 being zero.
///
/// Small rings are stored as complete tables with 1 as the identity. Larger
/// ones keep an additive group `⊕ Z/c_t` with a bilinear product; an element
/// index is then the mixed-radix number of its coordinates, the first
/// coordinate most significant.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    repr: Repr,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug)]
enum Repr {
    Table(Table),
    Linear(Linear),
}

#[derive(Clone, Debug)]
struct Table {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Table {
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Product {
    /// `e_s e_t = Σ_u c[(s k + t) k + u] e_u`.
    Constants(Vec<u64>),
    /// Endomorphisms of `⊕ Z/o_i` on `n` coordinates: additive coordinate
    /// `t = j n + i` is matrix entry `(i, j)` counted in units of `step[t]`.
    Endo { n: usize, orders: Vec<u64>, step: Vec<u64> },
}

#[derive(Clone, Debug)]
pub(crate) struct Linear {
    /// Additive orders `c_t`.
    orders: Vec<u64>,
    place: Vec<u64>,
    order: u64,
    product: Product,
    one: Vec<u64>,
}

impl Linear {
    pub(crate) fn new(orders: Vec<u64>, product: Product, one: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        let mut place = vec![0; orders.len()];
        for t in (0..orders.len()).rev() {
            place[t] = order;
            order = order
                .checked_mul(orders[t])
                .ok_or_else(|| Error::too_large("ring", "more than 2^64", u64::MAX))?;
        }
        Ok(Linear {
            orders,
            place,
            order,
            product,
            one,
        })
    }

    fn dim(&self) -> usize {
        self.orders.len()
    }

    fn decode(&self, mut x: u64) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for t in (0..self.dim()).rev() {
            out[t] = x % self.orders[t];
            x /= self.orders[t];
        }
        out
    }

    fn encode(&self, c: &[u64]) -> u64 {
        c.iter().zip(&self.place).map(|(a, p)| a * p).sum()
    }

    fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), c)| (x + y) % c).collect()
    }

    fn neg_coords(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, c)| (c - x) % c).collect()
    }

    fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.dim();
        match &self.product {
            Product::Constants(c) => {
                let mut out = vec![0u64; k];
                for s in 0..k {
                    if a[s] == 0 {
                        continue;
                    }
                    for t in 0..k {
                        if b[t] == 0 {
                            continue;
                        }
                        let ab = a[s] * b[t];
                        let row = &c[(s * k + t) * k..(s * k + t + 1) * k];
                        for u in 0..k {
                            if row[u] != 0 {
                                out[u] = (out[u] + ab * row[u]) % self.orders[u];
                            }
                        }
                    }
                }
                out
            }
            Product::Endo { n, orders, step } => {
                let n = *n;
                let entry = |x: &[u64], i: usize, j: usize| x[j * n + i] * step[j * n + i];
                let mut out = vec![0u64; k];
                for i in 0..n {
                    let o = orders[i];
                    for j in 0..n {
                        let mut v: u64 = 0;
                        for l in 0..n {
                            v = (v + entry(a, i, l) % o * (entry(b, l, j) % o)) % o;
                        }
                        out[j * n + i] = v / step[j * n + i];
                    }
                }
                out
            }
        }
    }

    fn basis(&self, t: usize) -> Vec<u64> {
        let mut e = vec![0; self.dim()];
        if self.orders[t] > 1 {
            e[t] = 1;
        }
        e
    }

    /// Whether `a y a = a` has a solution `y`: the map `y ↦ a y a` is
    /// additive, so this is one linear congruence system.
    fn has_inner_inverse(&self, a: &[u64]) -> Result<bool> {
        let k = self.dim();
        let cols: Vec<Vec<u64>> = (0..k)
            .map(|t| self.mul_coords(&self.mul_coords(a, &self.basis(t)), a))
            .collect();
        let p = self.orders.iter().copied().filter(|&c| c > 1).max().unwrap_or(1);
        if p > 1 && is_prime(p) && self.orders.iter().all(|&c| c == 1 || c == p) {
            return Ok(solvable_mod_p(&cols, a, &self.orders, p));
        }
        let coeff = int_matrix(k, k, |u, t| BigInt::from(cols[t][u]));
        let rhs = vec![a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()];
        let moduli: Vec<BigInt> = self.orders.iter().map(|&c| BigInt::from(c)).collect();
        Ok(solve_congruences(&coeff, &rhs, &moduli)?.is_some())
    }
}

/// Consistency of `Σ_t y_t cols[t] = rhs` over F_p (coordinates of order 1
/// are ignored).
fn solvable_mod_p(cols: &[Vec<u64>], rhs: &[u64], orders: &[u64], p: u64) -> bool {
    let live: Vec<usize> = (0..orders.len()).filter(|&u| orders[u] > 1).collect();
    let k = cols.len();
    let mut rows: Vec<Vec<u64>> = live
        .iter()
        .map(|&u| {
            let mut r: Vec<u64> = cols.iter().map(|c| c[u] % p).collect();
            r.push(rhs[u] % p);
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..k {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inverse(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for j in 0..=k {
                    rows[r][j] = (rows[r][j] + (p - f) * rows[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[k] == 0)
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

impl FiniteRing {
    /// Ring from complete tables; zero must be element 0 and the identity
    /// element 1 (or 0 in the trivial ring).
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(Error::NotARing("a ring has at least one element".into()));
        }
        if mul.len() != n || add.iter().chain(&mul).any(|r| r.len() != n) {
            return Err(Error::NotARing("tables must be square and of equal size".into()));
        }
        if add.iter().chain(&mul).flatten().any(|&x| x >= n) {
            return Err(Error::NotARing("table entry out of range".into()));
        }
        if labels.as_ref().is_some_and(|l| l.len() != n) {
            return Err(Error::spec("one label per element"));
        }
        if n as u64 > u32::MAX as u64 {
            return Err(Error::too_large("ring table", n, u32::MAX as u64));
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().map(|x| x as u32).collect();
        let ring = FiniteRing {
            repr: Repr::Table(Table {
                order: n,
                add: flat(add),
                mul: flat(mul),
            }),
            labels,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    pub(crate) fn from_linear(lin: Linear, labels: Option<Vec<String>>) -> Result<Self> {
        let ring = FiniteRing {
            repr: Repr::Linear(lin),
            labels,
        };
        ring.check_axioms()?;
        Ok(ring)
    }

    /// `F_p`-algebra (or any `⊕ Z/c_t`) given by structure constants
    /// `c[s][t][u]` and the coordinates of its identity.
    pub fn from_structure_constants(orders: Vec<u64>, constants: Vec<u64>, one: Vec<u64>) -> Result<Self> {
        let k = orders.len();
        if constants.len() != k * k * k || one.len() != k {
            return Err(Error::spec("structure constants must be k*k*k with a k-vector identity"));
        }
        if orders.contains(&0) {
            return Err(Error::spec("additive orders must be positive"));
        }
        let lin = Linear::new(orders, Product::Constants(constants), one)?;
        Self::from_linear(lin, None)
    }

    pub fn order(&self) -> u64 {
        match &self.repr {
            Repr::Table(t) => t.order as u64,
            Repr::Linear(l) => l.order,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.repr, Repr::Table(_))
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        match &self.repr {
            Repr::Table(t) => u64::from(t.order > 1),
            Repr::Linear(l) => l.encode(&l.one),
        }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        match &self.repr {
            Repr::Table(t) => t.add(a as usize, b as usize) as u64,
            Repr::Linear(l) => l.encode(&l.add_coords(&l.decode(a), &l.decode(b))),
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.repr {
            Repr::Table(t) => t.mul(a as usize, b as usize) as u64,
            Repr::Linear(l) => l.encode(&l.mul_coords(&l.decode(a), &l.decode(b))),
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        match &self.repr {
            Repr::Table(t) => (0..t.order).find(|&b| t.add(a as usize, b) == 0).expect("additive inverse") as u64,
            Repr::Linear(l) => l.encode(&l.neg_coords(&l.decode(a))),
        }
    }

    pub fn label(&self, a: u64) -> String {
        if let Some(l) = &self.labels {
            return l[a as usize].clone();
        }
        match &self.repr {
            Repr::Table(_) => a.to_string(),
            Repr::Linear(l) => format!("{:?}", l.decode(a)),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len() as u64, self.order());
        self.labels = Some(labels);
    }

    /// Elements generating the additive group.
    fn additive_generators(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Table(t) => (1..t.order as u64).collect(),
            Repr::Linear(l) => (0..l.dim()).filter(|&t| l.orders[t] > 1).map(|t| l.place[t]).collect(),
        }
    }

    fn check_axioms(&self) -> Result<()> {
        match &self.repr {
            Repr::Table(t) => self.check_table(t),
            Repr::Linear(l) => self.check_linear(l),
        }
    }

    /// Every triple up to [`FULL_CHECK_LIMIT`], a seeded sample above.
    fn check_table(&self, t: &Table) -> Result<()> {
        let n = t.order;
        let (zero, one) = (0, self.one() as usize);
        for a in 0..n {
            if t.add(a, zero) != a || t.mul(a, one) != a || t.mul(one, a) != a {
                return Err(Error::NotARing(format!("element {a} breaks the zero or identity law")));
            }
            if !(0..n).any(|b| t.add(a, b) == zero) {
                return Err(Error::NotARing(format!("element {a} has no additive inverse")));
            }
            for b in 0..n {
                if t.add(a, b) != t.add(b, a) {
                    return Err(Error::NotARing(format!("addition is not commutative at ({a}, {b})")));
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            let what = if t.add(t.add(a, b), c) != t.add(a, t.add(b, c)) {
                "additive associativity"
            } else if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                "associativity"
            } else if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c))
                || t.mul(t.add(a, b), c) != t.add(t.mul(a, c), t.mul(b, c))
            {
                "distributivity"
            } else {
                return Ok(());
            };
            Err(Error::NotARing(format!("{what} fails at ({a}, {b}, {c})")))
        };
        if n as u64 <= FULL_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..20_000 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// The product is bilinear by construction, so well-definedness on the
    /// cyclic summands, associativity on basis triples and the identity on
    /// basis elements are the whole story.
    fn check_linear(&self, l: &Linear) -> Result<()> {
        let k = l.dim();
        if l.one.len() != k || l.one.iter().zip(&l.orders).any(|(x, c)| x >= c) {
            return Err(Error::NotARing("identity coordinates out of range".into()));
        }
        let basis: Vec<Vec<u64>> = (0..k).map(|t| l.basis(t)).collect();
        let scaled = |v: &[u64], by: u64| -> Vec<u64> {
            v.iter().zip(&l.orders).map(|(x, c)| x * (by % c) % c).collect()
        };
        for s in 0..k {
            for t in 0..k {
                let st = l.mul_coords(&basis[s], &basis[t]);
                if scaled(&st, l.orders[s]).iter().any(|&x| x != 0) || scaled(&st, l.orders[t]).iter().any(|&x| x != 0) {
                    return Err(Error::NotARing(format!("product of basis elements {s}, {t} ignores their orders")));
                }
                for u in 0..k {
                    let left = l.mul_coords(&st, &basis[u]);
                    let right = l.mul_coords(&basis[s], &l.mul_coords(&basis[t], &basis[u]));
                    if left != right {
                        return Err(Error::NotARing(format!("associativity fails on basis ({s}, {t}, {u})")));
                    }
                }
            }
            if l.orders[s] > 1
                && (l.mul_coords(&basis[s], &l.one) != basis[s] || l.mul_coords(&l.one, &basis[s]) != basis[s])
            {
                return Err(Error::NotARing(format!("basis element {s} breaks the identity law")));
            }
        }
        Ok(())
    }

    /// Same ring as complete tables with zero at 0 and identity at 1.
    pub fn to_table(&self) -> Result<FiniteRing> {
        let Repr::Linear(_) = &self.repr else {
            return Ok(self.clone());
        };
        let n = self.order();
        if n > TABLE_LIMIT {
            return Err(Error::too_large("ring table", n, TABLE_LIMIT));
        }
        let one = self.one();
        // old index of each new position
        let mut perm: Vec<u64> = vec![0];
        if n > 1 {
            perm.push(one);
        }
        perm.extend((1..n).filter(|&x| x != one));
        let mut pos = vec![0usize; n as usize];
        for (i, &x) in perm.iter().enumerate() {
            pos[x as usize] = i;
        }
        let table = |op: &dyn Fn(u64, u64) -> u64| -> Vec<Vec<usize>> {
            perm.iter()
                .map(|&a| perm.iter().map(|&b| pos[op(a, b) as usize]).collect())
                .collect()
        };
        let add = table(&|a, b| self.add(a, b));
        let mul = table(&|a, b| self.mul(a, b));
        let labels = perm.iter().map(|&a| self.label(a)).collect();
        Self::from_tables(add, mul, Some(labels))
    }

    pub fn is_commutative(&self) -> bool {
        let g = self.additive_generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Every `a` has some `b` with `a b a = a`. Returns the first failing
    /// element, if any.
    pub fn vn_regular_counterexample(&self) -> Result<Option<u64>> {
        match &self.repr {
            Repr::Table(t) => Ok((0..t.order)
                .find(|&a| !(0..t.order).any(|b| t.mul(t.mul(a, b), a) == a))
                .map(|a| a as u64)),
            Repr::Linear(l) => {
                for a in 0..l.order {
                    if !l.has_inner_inverse(&l.decode(a))? {
                        return Ok(Some(a));
                    }
                }
                Ok(None)
            }
        }
    }

    pub fn is_vn_regular(&self) -> Result<bool> {
        Ok(self.vn_regular_counterexample()?.is_none())
    }

    /// A nonzero `x` with `x r x = 0` for every `r`, if one exists.
    pub fn semiprime_counterexample(&self) -> Option<u64> {
        let gens = self.additive_generators();
        (1..self.order()).find(|&x| gens.iter().all(|&r| self.mul(self.mul(x, r), x) == 0))
    }

    pub fn is_semiprime(&self) -> bool {
        self.semiprime_counterexample().is_none()
    }

    pub fn is_unit(&self, a: u64) -> bool {
        let one = self.one();
        self.unit_inverse(a, one).is_some()
    }

    fn unit_inverse(&self, a: u64, one: u64) -> Option<u64> {
        (0..self.order()).find(|&b| self.mul(a, b) == one && self.mul(b, a) == one)
    }

    /// `J(R) = { x : 1 − a x is a unit for every a }`, in increasing order.
    pub fn jacobson_radical(&self) -> Result<Vec<u64>> {
        let t = match &self.repr {
            Repr::Table(_) => self.clone(),
            Repr::Linear(_) => {
                // decide on the table, report in this ring's indices
                let table = self.to_table()?;
                let back = self.table_positions();
                let mut j: Vec<u64> = table.jacobson_radical()?.into_iter().map(|x| back[x as usize]).collect();
                j.sort_unstable();
                return Ok(j);
            }
        };
        let n = t.order();
        let one = t.one();
        let units: Vec<bool> = (0..n).map(|a| t.unit_inverse(a, one).is_some()).collect();
        let j: Vec<u64> = (0..n)
            .filter(|&x| (0..n).all(|a| units[t.add(one, t.neg(t.mul(a, x))) as usize]))
            .collect();
        debug_assert!(j.iter().all(|&x| (0..n).all(|r| {
            j.contains(&t.mul(r, x)) && j.contains(&t.mul(x, r))
        })));
        Ok(j)
    }

    /// Indices in this ring of the elements of `to_table()`, position by
    /// position.
    pub(crate) fn table_positions(&self) -> Vec<u64> {
        let n = self.order();
        let one = self.one();
        let mut perm = vec![0];
        if n > 1 {
            perm.push(one);
        }
        perm.extend((1..n).filter(|&x| x != one));
        perm
    }

    /// Elements commuting with everything.
    pub fn center_elements(&self) -> Vec<u64> {
        let gens = self.additive_generators();
        (0..self.order())
            .filter(|&x| gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    /// The center as a ring of its own, tables inherited.
    pub fn center(&self) -> Result<FiniteRing> {
        let elems = self.center_elements();
        if elems.len() as u64 > TABLE_LIMIT {
            return Err(Error::too_large("center", elems.len(), TABLE_LIMIT));
        }
        let one = self.one();
        let mut order: Vec<u64> = vec![0];
        if one != 0 {
            order.push(one);
        }
        order.extend(elems.iter().copied().filter(|&x| x != 0 && x != one));
        let pos = |x: u64| order.iter().position(|&y| y == x).expect("center is closed");
        let table = |op: &dyn Fn(u64, u64) -> u64| -> Vec<Vec<usize>> {
            order.iter().map(|&a| order.iter().map(|&b| pos(op(a, b))).collect()).collect()
        };
        let labels = order.iter().map(|&a| self.label(a)).collect();
        Self::from_tables(table(&|a, b| self.add(a, b)), table(&|a, b| self.mul(a, b)), Some(labels))
    }

    pub fn to_json(&self) -> Result<Json> {
        let t = self.to_table()?;
        let Repr::Table(tab) = &t.repr else { unreachable!() };
        let n = tab.order;
        let grid = |v: &[u32]| -> Vec<Vec<u32>> { v.chunks(n).map(<[u32]>::to_vec).collect() };
        let mut out = json!({"order": n, "add": grid(&tab.add), "mul": grid(&tab.mul)});
        if let Some(l) = &t.labels {
            out["labels"] = json!(l);
        }
        Ok(out)
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let grid = |key: &str| -> Result<Vec<Vec<usize>>> {
            let rows = v
                .get(key)
                .and_then(Json::as_array)
                .ok_or_else(|| Error::spec(format!("ring needs an \"{key}\" table")))?;
            rows.iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::spec("table rows must be arrays"))?
                        .iter()
                        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::spec("table entries must be indices")))
                        .collect()
                })
                .collect()
        };
        let add = grid("add")?;
        let mul = grid("mul")?;
        if let Some(order) = v.get("order") {
            if order.as_u64() != Some(add.len() as u64) {
                return Err(Error::spec("\"order\" does not match the tables"));
            }
        }
        let labels = match v.get("labels") {
            None | Some(Json::Null) => None,
            Some(l) => Some(
                l.as_array()
                    .ok_or_else(|| Error::spec("\"labels\" must be an array"))?
                    .iter()
                    .map(|x| match x {
                        Json::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect(),
            ),
        };
        Self::from_tables(add, mul, labels)
    }
}

pub fn is_vn_regular(r: &FiniteRing) -> Result<bool> {
    r.is_vn_regular()
}

pub fn is_semiprime(r: &FiniteRing) -> bool {
    r.is_semiprime()
}

pub fn jacobson_radical(r: &FiniteRing) -> Result<Vec<u64>> {
    r.jacobson_radical()
}

pub fn center(r: &FiniteRing) -> Result<FiniteRing> {
    r.center()
}

/// `Z/n` as a table ring.
pub fn cyclic_ring(n: usize) -> FiniteRing {
    let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let mul = (0..n).map(|a| (0..n).map(|b| a * b % n).collect()).collect();
    FiniteRing::from_tables(add, mul, None).expect("Z/n is a ring")
}

/// `M_k(F_p)` by structure constants on the elementary matrices.
pub fn matrix_ring(p: u64, k: usize) -> Result<FiniteRing> {
    let d = k * k;
    let mut c = vec![0u64; d * d * d];
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                // E_ij E_jl = E_il
                c[((i * k + j) * d + (j * k + l)) * d + (i * k + l)] = 1;
            }
        }
    }
    let one = (0..d).map(|t| u64::from(t / k == t % k)).collect();
    FiniteRing::from_structure_constants(vec![p; d], c, one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: usize) -> FiniteRing {
        cyclic_ring(p)
    }

    /// `F_2[C_2]` on the basis (1, g).
    fn group_algebra_c2() -> FiniteRing {
        let c = vec![1, 0, 0, 1, 0, 1, 1, 0];
        FiniteRing::from_structure_constants(vec![2, 2], c, vec![1, 0]).unwrap()
    }

    /// `F_2[x]/x²` on the basis (1, x).
    fn dual_numbers() -> FiniteRing {
        let c = vec![1, 0, 0, 1, 0, 1, 0, 0];
        FiniteRing::from_structure_constants(vec![2, 2], c, vec![1, 0]).unwrap()
    }

    fn f2_squared() -> FiniteRing {
        let c = vec![1, 0, 0, 0, 0, 0, 0, 1];
        FiniteRing::from_structure_constants(vec![2, 2], c, vec![1, 1]).unwrap()
    }

    #[test]
    fn vn_regularity_examples() {
        assert!(!cyclic_ring(4).is_vn_regular().unwrap());
        assert_eq!(cyclic_ring(4).vn_regular_counterexample().unwrap(), Some(2));
        assert!(cyclic_ring(6).is_vn_regular().unwrap());
        for p in [2, 3, 5, 7] {
            assert!(field(p).is_vn_regular().unwrap());
        }
    }

    #[test]
    fn semiprime_examples() {
        assert!(!cyclic_ring(4).is_semiprime());
        assert!(!group_algebra_c2().is_semiprime());
        assert!(matrix_ring(2, 2).unwrap().is_semiprime());
        assert!(matrix_ring(2, 2).unwrap().to_table().unwrap().is_semiprime());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(cyclic_ring(4).jacobson_radical().unwrap(), vec![0, 2]);
        assert_eq!(f2_squared().jacobson_radical().unwrap(), vec![0]);
        let d = dual_numbers();
        let x = d.additive_generators()[1];
        assert_eq!(d.jacobson_radical().unwrap(), vec![0, x]);
        assert_eq!(matrix_ring(3, 2).unwrap().jacobson_radical().unwrap(), vec![0]);
    }

    #[test]
    fn center_examples() {
        let z6 = cyclic_ring(6);
        assert_eq!(z6.center().unwrap().order(), 6);
        let m = matrix_ring(2, 2).unwrap();
        let c = m.center().unwrap();
        assert_eq!(c.order(), 2);
        assert_eq!(m.center_elements(), vec![0, m.one()]);
        assert_eq!(group_algebra_c2().center().unwrap().order(), 4);
        assert!(c.is_commutative());
    }

    #[test]
    fn linear_and_table_routes_agree() {
        for r in [group_algebra_c2(), dual_numbers(), f2_squared(), matrix_ring(2, 2).unwrap(), matrix_ring(3, 1).unwrap()] {
            let t = r.to_table().unwrap();
            assert_eq!(t.order(), r.order());
            assert_eq!(t.is_vn_regular().unwrap(), r.is_vn_regular().unwrap());
            assert_eq!(t.is_semiprime(), r.is_semiprime());
            assert_eq!(t.center().unwrap().order(), r.center().unwrap().order());
            assert_eq!(t.jacobson_radical().unwrap().len(), r.jacobson_radical().unwrap().len());
        }
    }

    #[test]
    fn large_matrix_ring_is_regular() {
        let m = matrix_ring(2, 3).unwrap();
        assert_eq!(m.order(), 512);
        assert!(m.is_vn_regular().unwrap());
        assert!(m.is_semiprime());
    }

    #[test]
    fn table_json_round_trip() {
        let r = cyclic_ring(6);
        let back = FiniteRing::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back.to_json().unwrap(), r.to_json().unwrap());
    }

    #[test]
    fn broken_tables_are_rejected() {
        // Z/4 addition with a multiplication that is not associative
        let add: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let mut mul: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a * b % 4).collect()).collect();
        mul[2][3] = 1;
        assert!(matches!(FiniteRing::from_tables(add.clone(), mul, None), Err(Error::NotARing(_))));
        let bad_one: Vec<Vec<usize>> = (0..4).map(|_| vec![0; 4]).collect();
        assert!(FiniteRing::from_tables(add, bad_one, None).is_err());
        assert!(FiniteRing::from_json(&json!({"add": [[0, 1]], "mul": [[0]]})).is_err());
    }

    #[test]
    fn trivial_ring() {
        let r = FiniteRing::from_tables(vec![vec![0]], vec![vec![0]], None).unwrap();
        assert_eq!(r.one(), 0);
        assert!(r.is_vn_regular().unwrap());
        assert!(r.is_semiprime());
    }
}
