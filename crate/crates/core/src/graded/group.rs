use serde_json::{json, Value as Json};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// `table[a][b] = a·b`; the group laws are verified up to order 64.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) || table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup("the Cayley table must be a square grid of element indices".into()));
        }
        let at = |a: usize, b: usize| table[a][b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| at(a, b) == identity && at(b, a) == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::NotAGroup(format!("associativity fails at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: table.into_iter().flatten().collect(),
            identity,
            inverse,
        })
    }

    /// `C_n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotAGroup("a group has at least one element".into()));
        }
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<&[usize]> = self.table.chunks(self.order).collect();
        json!({"order": self.order, "table": rows})
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let rows = v
            .get("table")
            .and_then(Json::as_array)
            .ok_or_else(|| Error::spec("group needs a \"table\""))?;
        let table = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| Error::spec("table rows must be arrays"))?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| Error::spec("table entries must be indices")))
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        if let Some(o) = v.get("order") {
            if o.as_u64() != Some(table.len() as u64) {
                return Err(Error::spec("\"order\" does not match the table"));
            }
        }
        Self::from_table(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let c3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(c3.identity(), 0);
        assert_eq!(c3.inv(1), 2);
        assert_eq!(c3.mul(2, 2), 1);
        assert_eq!(FiniteGroup::from_json(&c3.to_json()).unwrap(), c3);
    }

    #[test]
    fn bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FiniteGroup::from_table(vec![]).is_err());
    }
}
