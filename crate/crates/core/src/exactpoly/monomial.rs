use std::cmp::Ordering;

use smallvec::SmallVec;

/// Sparse exponent vector: `(variable index, exponent)` pairs sorted by index.
/// Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: SmallVec<[(u32, u32); 4]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut m = Self::one();
        if exp > 0 {
            m.exps.push((index as u32, exp));
        }
        m
    }

    /// Builds a monomial from arbitrary pairs; repeated indices are summed.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut v: SmallVec<[(u32, u32); 4]> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(i, e)| (i as u32, e))
            .collect();
        v.sort_unstable_by_key(|p| p.0);
        let mut out: SmallVec<[(u32, u32); 4]> = SmallVec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        Self { exps: out }
    }

    /// Dense constructor, mostly for tests.
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.exps
            .binary_search_by_key(&(index as u32), |p| p.0)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|p| p.1).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .map(|&(i, e)| u64::from(weights[i as usize]) * u64::from(e))
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = SmallVec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let d = if j < other.exps.len() && other.exps[j].0 == v {
                j += 1;
                other.exps[j - 1].1
            } else {
                0
            };
            if e > d {
                out.push((v, e - d));
            }
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                out.push((v, e.min(other.exps[j].1)));
            }
        }
        Monomial { exps: out }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.gcd(other).is_one()
    }

    fn merge_with(&self, other: &Monomial, f: fn(u32, u32) -> u32) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i]);
                i += 1;
            } else if take_b {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, f(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
        Monomial { exps: out }
    }

    /// Renumbers variables through `map`; `None` entries must not occur in
    /// the support, otherwise `None` is returned.
    pub fn remap(&self, map: &[Option<usize>]) -> Option<Monomial> {
        let mut pairs = Vec::with_capacity(self.exps.len());
        for &(v, e) in &self.exps {
            pairs.push((map.get(v as usize).copied().flatten()?, e));
        }
        Some(Monomial::from_pairs(pairs))
    }

    /// Splits into the part over variables with `pred(var)` true and the rest.
    pub fn split_by(&self, pred: impl Fn(usize) -> bool) -> (Monomial, Monomial) {
        let mut yes = Monomial::one();
        let mut no = Monomial::one();
        for &(v, e) in &self.exps {
            if pred(v as usize) {
                yes.exps.push((v, e));
            } else {
                no.exps.push((v, e));
            }
        }
        (yes, no)
    }

    pub(crate) fn pairs(&self) -> &[(u32, u32)] {
        &self.exps
    }
}
