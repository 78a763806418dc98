//! The coset space Gamma_0(N)\SL_2(Z) as the projective line P^1(Z/N).

mod matrix2;

pub use matrix2::IntMatrix2;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{ext_gcd, gcd_i64};

/// A point `(c : d)` of P^1(Z/N) in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    pub n: u64,
    pub c: u64,
    pub d: u64,
}

impl fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}@{}", self.c, self.d, self.n)
    }
}

impl FromStr for CosetLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected c:d@N, got {s:?}"));
        let (pair, n) = s.split_once('@').ok_or_else(bad)?;
        let (c, d) = pair.split_once(':').ok_or_else(bad)?;
        let n: u64 = n.trim().parse().map_err(|_| bad())?;
        let c: i64 = c.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        let line = ProjLine::get(n);
        let i = line.index_of(c, d).ok_or_else(|| Error::Parse(format!("({c}:{d}) is not a point of P^1(Z/{n})")))?;
        Ok(line.label(i))
    }
}

impl Serialize for CosetLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CosetLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Label table for one level. Labels are lexicographically sorted and each is the
/// lexicographic minimum of its orbit under unit scaling.
#[derive(Debug)]
pub struct ProjLine {
    n: u64,
    labels: Vec<(u64, u64)>,
    // index of the canonical label of (c, d), at position c*N + d; usize::MAX when gcd(c,d,N) > 1
    lookup: Vec<usize>,
}

impl ProjLine {
    fn build(n: u64) -> Self {
        let units: Vec<u64> = (1..=n.max(1)).filter(|&u| gcd_i64(u as i64, n as i64) == 1).map(|u| u % n).collect();
        let size = (n * n) as usize;
        let mut lookup = vec![usize::MAX; size.max(1)];
        let mut labels = Vec::new();
        if n == 1 {
            return ProjLine { n, labels: vec![(0, 1)], lookup: vec![0] };
        }
        for c in 0..n {
            for d in 0..n {
                let pos = (c * n + d) as usize;
                if lookup[pos] != usize::MAX || gcd_i64(gcd_i64(c as i64, d as i64), n as i64) != 1 {
                    continue;
                }
                let idx = labels.len();
                labels.push((c, d));
                for &u in &units {
                    lookup[((u * c % n) * n + u * d % n) as usize] = idx;
                }
            }
        }
        ProjLine { n, labels, lookup }
    }

    /// Shared table for level `n`, built on first use.
    pub fn get(n: u64) -> Arc<ProjLine> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<ProjLine>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("cache lock").get(&n) {
            return Arc::clone(t);
        }
        let table = Arc::new(ProjLine::build(n));
        cache.lock().expect("cache lock").entry(n).or_insert(table).clone()
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> CosetLabel {
        let (c, d) = self.labels[i];
        CosetLabel { n: self.n, c, d }
    }

    pub fn labels(&self) -> Vec<CosetLabel> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    /// Index of the label of an arbitrary integer pair, if it is a point of P^1(Z/N).
    pub fn index_of(&self, c: i64, d: i64) -> Option<usize> {
        if self.n == 1 {
            return Some(0);
        }
        let n = self.n as i64;
        let pos = (c.rem_euclid(n) * n + d.rem_euclid(n)) as usize;
        let i = self.lookup[pos];
        (i != usize::MAX).then_some(i)
    }

    pub fn index_of_label(&self, a: &CosetLabel) -> usize {
        assert_eq!(a.n, self.n, "label level");
        self.index_of(a.c as i64, a.d as i64).expect("valid label")
    }

    /// Index of the coset A*g, where A has index `i` and g is invertible mod N.
    pub fn act_index(&self, i: usize, g: &IntMatrix2) -> usize {
        let (c, d) = self.labels[i];
        let (c, d) = (c as i64, d as i64);
        let nc = c * g.a + d * g.c;
        let nd = c * g.b + d * g.d;
        self.index_of(nc, nd).expect("action by a matrix invertible mod N")
    }

    /// Index of (-c : d).
    pub fn delta_index(&self, i: usize) -> usize {
        let (c, d) = self.labels[i];
        self.index_of(-(c as i64), d as i64).expect("valid label")
    }

    /// An SL_2(Z) matrix in the coset, with minimal nonnegative entries.
    pub fn lift(&self, i: usize) -> IntMatrix2 {
        let (c, d) = self.labels[i];
        let (c, d) = (c as i64, d as i64);
        let n = self.n as i64;
        if c == 0 {
            return IntMatrix2::identity();
        }
        let mut d1 = if d == 0 { n } else { d };
        while gcd_i64(c, d1) != 1 {
            d1 += n;
        }
        // a*d1 - b*c = 1
        let (_, x, y) = ext_gcd(d1, c);
        let (mut a, mut b) = (x, -y);
        // a in [1, c] keeps b = (a*d1 - 1)/c nonnegative
        let t = (a - 1).div_euclid(c);
        a -= t * c;
        b -= t * d1;
        IntMatrix2::new(a, b, c, d1)
    }

    /// Index at level `m` of the reduction of label `i`.
    pub fn project_index(&self, i: usize, m: u64) -> Result<usize> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::Precondition(format!("{m} does not divide {}", self.n)));
        }
        let (c, d) = self.labels[i];
        Ok(ProjLine::get(m).index_of(c as i64, d as i64).expect("reduction of a point"))
    }
}

pub fn proj_line(n: u64) -> Result<Vec<CosetLabel>> {
    if n == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    Ok(ProjLine::get(n).labels())
}

pub fn act(a: &CosetLabel, g: &IntMatrix2) -> Result<CosetLabel> {
    if g.det() != 1 {
        return Err(Error::Precondition(format!("{g} does not have determinant 1")));
    }
    let line = ProjLine::get(a.n);
    Ok(line.label(line.act_index(line.index_of_label(a), g)))
}

pub fn delta_conj(a: &CosetLabel) -> CosetLabel {
    let line = ProjLine::get(a.n);
    line.label(line.delta_index(line.index_of_label(a)))
}

pub fn project(a: &CosetLabel, m: u64) -> Result<CosetLabel> {
    let line = ProjLine::get(a.n);
    let j = line.project_index(line.index_of_label(a), m)?;
    Ok(ProjLine::get(m).label(j))
}

/// Labels of level `n` projecting to `c`.
pub fn fiber(c: &CosetLabel, n: u64) -> Result<Vec<CosetLabel>> {
    if n == 0 || n % c.n != 0 {
        return Err(Error::Precondition(format!("{} does not divide {n}", c.n)));
    }
    Ok(proj_line(n)?.into_iter().filter(|a| project(a, c.n).ok().as_ref() == Some(c)).collect())
}

pub fn lift(a: &CosetLabel) -> IntMatrix2 {
    let line = ProjLine::get(a.n);
    line.lift(line.index_of_label(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lbl(c: u64, d: u64, n: u64) -> CosetLabel {
        CosetLabel { n, c, d }
    }

    #[test]
    fn sizes() {
        assert_eq!(proj_line(1).unwrap(), vec![lbl(0, 1, 1)]);
        assert_eq!(proj_line(7).unwrap().len(), 8);
        assert_eq!(proj_line(14).unwrap().len(), 24);
        assert_eq!(proj_line(12).unwrap().len(), 24);
        assert_eq!(proj_line(25).unwrap().len(), 30);
        assert!(proj_line(0).is_err());
    }

    #[test]
    fn level_seven_order() {
        let labels: Vec<String> = proj_line(7).unwrap().iter().map(|a| a.to_string()).collect();
        assert_eq!(labels[0], "0:1@7");
        assert_eq!(labels[1], "1:0@7");
        assert_eq!(labels[7], "1:6@7");
    }

    #[test]
    fn action_examples() {
        let id = lbl(0, 1, 7);
        assert_eq!(act(&id, &IntMatrix2::identity()).unwrap(), id);
        assert_eq!(act(&id, &IntMatrix2::S).unwrap(), lbl(1, 0, 7));
        assert_eq!(act(&lbl(1, 2, 7), &IntMatrix2::T).unwrap(), lbl(1, 3, 7));
        assert!(act(&id, &IntMatrix2::new(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_conj(&lbl(0, 1, 7)), lbl(0, 1, 7));
        assert_eq!(delta_conj(&lbl(1, 1, 7)), lbl(1, 6, 7));
        for a in proj_line(14).unwrap() {
            assert_eq!(delta_conj(&delta_conj(&a)), a);
        }
    }

    #[test]
    fn projection_and_fibers() {
        let a: CosetLabel = "7:1@14".parse().unwrap();
        assert_eq!(project(&a, 7).unwrap(), lbl(0, 1, 7));
        assert_eq!(fiber(&lbl(0, 1, 7), 14).unwrap().len(), 3);
        let total: usize = proj_line(7).unwrap().iter().map(|c| fiber(c, 14).unwrap().len()).sum();
        assert_eq!(total, 24);
        assert!(project(&a, 3).is_err());
        assert!(fiber(&lbl(0, 1, 7), 15).is_err());
    }

    #[test]
    fn labels_serialize_as_strings() {
        let a = lbl(1, 3, 7);
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"1:3@7\"");
        let back: CosetLabel = serde_json::from_str("\"1:3@7\"").unwrap();
        assert_eq!(back, a);
        assert_eq!("2:6@7".parse::<CosetLabel>().unwrap(), a);
        assert!("7:7@7".parse::<CosetLabel>().is_err());
    }

    #[test]
    fn lifts_lie_in_their_coset() {
        for n in [1u64, 6, 7, 14, 30] {
            let line = ProjLine::get(n);
            for i in 0..line.len() {
                let g = line.lift(i);
                assert_eq!(g.det(), 1);
                assert!(g.a >= 0 && g.b >= 0 && g.c >= 0 && g.d >= 0);
                assert_eq!(line.index_of(g.c, g.d), Some(i));
            }
        }
    }

    fn sl2() -> impl Strategy<Value = IntMatrix2> {
        (-50i64..=50, -50i64..=50).prop_filter_map("coprime", |(c, d)| {
            let (g, x, y) = ext_gcd(d, c);
            (g == 1).then(|| IntMatrix2::new(x, -y, c, d))
        })
    }

    proptest! {
        #[test]
        fn right_action(n in 1u64..=30, g1 in sl2(), g2 in sl2()) {
            let line = ProjLine::get(n);
            for i in 0..line.len() {
                let lhs = line.act_index(line.act_index(i, &g1), &g2);
                let rhs = line.act_index(i, &g1.mul(&g2));
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn relations_act_trivially(n in 1u64..=30) {
            let line = ProjLine::get(n);
            let s2 = IntMatrix2::S.mul(&IntMatrix2::S);
            let u3 = IntMatrix2::U.mul(&IntMatrix2::U).mul(&IntMatrix2::U);
            for i in 0..line.len() {
                prop_assert_eq!(line.act_index(i, &s2), i);
                prop_assert_eq!(line.act_index(i, &u3), i);
            }
        }

        #[test]
        fn fibers_partition(m in 1u64..=10, k in 1u64..=4) {
            let n = m * k;
            let mut seen = Vec::new();
            for c in proj_line(m).unwrap() {
                for a in fiber(&c, n).unwrap() {
                    prop_assert_eq!(project(&a, m).unwrap(), c);
                    seen.push(a);
                }
            }
            seen.sort();
            seen.dedup();
            prop_assert_eq!(seen.len(), proj_line(n).unwrap().len());
        }
    }
}
