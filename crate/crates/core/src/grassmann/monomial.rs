use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A power product of even variables times an ordered word of distinct odd
/// variables.
///
/// Even exponents are stored sparsely as `(index, exponent)` pairs sorted by
/// index with no zero exponents; the odd word is strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    even: Vec<(usize, u32)>,
    odd: Vec<usize>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn even_var(i: usize) -> Self {
        Monomial { even: vec![(i, 1)], odd: Vec::new() }
    }

    pub fn odd_var(j: usize) -> Self {
        Monomial { even: Vec::new(), odd: vec![j] }
    }

    /// Build from raw parts, normalizing the even part and sorting the odd
    /// word. Returns the sign of the sorting permutation, or `None` when an
    /// odd index repeats.
    pub fn from_parts(even: &[(usize, u32)], odd: &[usize]) -> Option<(i8, Monomial)> {
        let mut dense: Vec<(usize, u32)> = Vec::new();
        for &(i, e) in even {
            if e == 0 {
                continue;
            }
            match dense.iter_mut().find(|(j, _)| *j == i) {
                Some(slot) => slot.1 += e,
                None => dense.push((i, e)),
            }
        }
        dense.sort_unstable();
        let (sign, word) = sort_odd_word(odd)?;
        Some((sign, Monomial { even: dense, odd: word }))
    }

    pub fn even_exponents(&self) -> &[(usize, u32)] {
        &self.even
    }

    pub fn odd_indices(&self) -> &[usize] {
        &self.odd
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.even.iter().find(|(j, _)| *j == i).map_or(0, |&(_, e)| e)
    }

    pub fn contains_odd(&self, j: usize) -> bool {
        self.odd.binary_search(&j).is_ok()
    }

    pub fn even_degree(&self) -> u32 {
        self.even.iter().map(|&(_, e)| e).sum()
    }

    /// Even degree plus the length of the odd word.
    pub fn total_degree(&self) -> u32 {
        self.even_degree() + self.odd.len() as u32
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.odd.len() % 2 == 1
    }

    pub fn has_odd_part(&self) -> bool {
        !self.odd.is_empty()
    }

    /// Product `self * other`; `None` when the odd words share an index.
    pub fn mul(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut a, mut b) = (0, 0);
        while a < self.even.len() || b < other.even.len() {
            match (self.even.get(a), other.even.get(b)) {
                (Some(&(ia, ea)), Some(&(ib, eb))) if ia == ib => {
                    even.push((ia, ea + eb));
                    a += 1;
                    b += 1;
                }
                (Some(&x), Some(&y)) if x.0 < y.0 => {
                    even.push(x);
                    a += 1;
                }
                (Some(_), Some(&y)) => {
                    even.push(y);
                    b += 1;
                }
                (Some(&x), None) => {
                    even.push(x);
                    a += 1;
                }
                (None, Some(&y)) => {
                    even.push(y);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        // Merge the two sorted odd words, counting how many elements of the
        // left word each right element jumps over.
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut swaps = 0usize;
        let (mut a, mut b) = (0, 0);
        while a < self.odd.len() || b < other.odd.len() {
            match (self.odd.get(a), other.odd.get(b)) {
                (Some(&x), Some(&y)) if x == y => return None,
                (Some(&x), Some(&y)) if x < y => {
                    odd.push(x);
                    a += 1;
                }
                (Some(_), Some(&y)) => {
                    swaps += self.odd.len() - a;
                    odd.push(y);
                    b += 1;
                }
                (Some(&x), None) => {
                    odd.push(x);
                    a += 1;
                }
                (None, Some(&y)) => {
                    odd.push(y);
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Monomial { even, odd }))
    }

    /// Ordinary derivative in even variable `i`: `(exponent, monomial)`.
    pub fn d_even(&self, i: usize) -> Option<(u32, Monomial)> {
        let pos = self.even.iter().position(|&(j, _)| j == i)?;
        let e = self.even[pos].1;
        let mut even = self.even.clone();
        if e == 1 {
            even.remove(pos);
        } else {
            even[pos].1 -= 1;
        }
        Some((e, Monomial { even, odd: self.odd.clone() }))
    }

    /// Left derivative in odd variable `j`: move it to the front and strike
    /// it. Returns the sign picked up along the way.
    pub fn d_odd(&self, j: usize) -> Option<(i8, Monomial)> {
        let pos = self.odd.binary_search(&j).ok()?;
        let mut odd = self.odd.clone();
        odd.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial { even: self.even.clone(), odd }))
    }

    /// Split off the odd word, keeping only the even part.
    pub fn even_part(&self) -> Monomial {
        Monomial { even: self.even.clone(), odd: Vec::new() }
    }

    /// Map indices through `even_map`/`odd_map`. The odd word is re-sorted;
    /// the returned sign is that of the sorting permutation.
    pub fn reindex(
        &self,
        even_map: impl Fn(usize) -> usize,
        odd_map: impl Fn(usize) -> usize,
    ) -> Option<(i8, Monomial)> {
        let even: Vec<(usize, u32)> = self.even.iter().map(|&(i, e)| (even_map(i), e)).collect();
        let odd: Vec<usize> = self.odd.iter().map(|&j| odd_map(j)).collect();
        Monomial::from_parts(&even, &odd)
    }
}

fn cmp_even_lex(a: &[(usize, u32)], b: &[(usize, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(ia, ea)), Some(&(ib, eb))) => {
                if ia != ib {
                    return ib.cmp(&ia);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// Canonical term order: higher even degree first, then larger even exponent
/// vector (lexicographic), then odd word ascending lexicographically.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .even_degree()
            .cmp(&self.even_degree())
            .then_with(|| cmp_even_lex(&other.even, &self.even))
            .then_with(|| self.odd.cmp(&other.odd))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sort an odd word, returning the permutation sign, or `None` on a repeat.
fn sort_odd_word(word: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut inversions = 0usize;
    for (k, a) in word.iter().enumerate() {
        for b in &word[k + 1..] {
            match a.cmp(b) {
                Ordering::Equal => return None,
                Ordering::Greater => inversions += 1,
                Ordering::Less => {}
            }
        }
    }
    let mut sorted = word.to_vec();
    sorted.sort_unstable();
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, sorted))
}

/// Reorder a product of odd generators into increasing order.
///
/// Returns `Ok(None)` when an index repeats (the product vanishes), otherwise
/// the sign of the sorting permutation together with the sorted monomial.
pub fn normalize_odd_word(word: &[usize], n_odd: usize) -> Result<Option<(i8, Monomial)>> {
    if let Some(&bad) = word.iter().find(|&&j| j >= n_odd) {
        return Err(Error::IndexOutOfRange { index: bad, len: n_odd });
    }
    Ok(sort_odd_word(word).map(|(s, odd)| (s, Monomial { even: Vec::new(), odd })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_swaps_with_sign() {
        let (s, m) = normalize_odd_word(&[1, 0], 2).unwrap().unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.odd_indices(), &[0, 1]);
    }

    #[test]
    fn normalize_repeat_vanishes() {
        assert!(normalize_odd_word(&[0, 0], 2).unwrap().is_none());
        assert!(normalize_odd_word(&[0, 2, 1, 2], 3).unwrap().is_none());
    }

    #[test]
    fn normalize_empty_is_unit() {
        let (s, m) = normalize_odd_word(&[], 0).unwrap().unwrap();
        assert_eq!(s, 1);
        assert!(m.is_one());
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        assert!(matches!(
            normalize_odd_word(&[3], 2),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        ));
    }

    #[test]
    fn merge_sign_matches_inversion_count() {
        let a = Monomial::from_parts(&[], &[1, 3]).unwrap().1;
        let b = Monomial::from_parts(&[], &[0, 2]).unwrap().1;
        // word [1,3,0,2] has inversions (1,0),(3,0),(3,2)
        let (s, m) = a.mul(&b).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m.odd_indices(), &[0, 1, 2, 3]);
        let (s2, _) = normalize_odd_word(&[1, 3, 0, 2], 4).unwrap().unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn left_derivative_sign() {
        let m = Monomial::from_parts(&[], &[0, 1]).unwrap().1;
        assert_eq!(m.d_odd(0).unwrap(), (1, Monomial::odd_var(1)));
        assert_eq!(m.d_odd(1).unwrap(), (-1, Monomial::odd_var(0)));
        assert!(m.d_odd(2).is_none());
    }

    #[test]
    fn order_is_graded_then_odd_lex() {
        let t2 = Monomial::from_parts(&[(0, 2)], &[]).unwrap().1;
        let ts = Monomial::from_parts(&[(0, 1), (1, 1)], &[]).unwrap().1;
        let s2 = Monomial::from_parts(&[(1, 2)], &[]).unwrap().1;
        let t = Monomial::even_var(0);
        let one = Monomial::one();
        let th = Monomial::odd_var(0);
        let mut v = vec![th.clone(), one.clone(), s2.clone(), t.clone(), ts.clone(), t2.clone()];
        v.sort();
        assert_eq!(v, vec![t2, ts, s2, t, one, th]);
    }
}
