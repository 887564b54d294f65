//! Words over the generator alphabet and Lyndon combinatorics.

use smallvec::SmallVec;

pub type Word = SmallVec<[u16; 8]>;

/// True iff `w` is strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u16]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    (1..n).all(|i| {
        let rot = w[i..].iter().chain(w[..i].iter());
        w.iter().lt(rot)
    })
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &[u16]) -> (&[u16], &[u16]) {
    debug_assert!(w.len() >= 2);
    for i in 1..w.len() {
        if is_lyndon(&w[i..]) {
            return (&w[..i], &w[i..]);
        }
    }
    unreachable!("a single letter is always a Lyndon suffix")
}

/// If `w = uu` with `u` Lyndon, returns `u`.
pub fn lyndon_square_root(w: &[u16]) -> Option<&[u16]> {
    let n = w.len();
    if !n.is_multiple_of(2) || n == 0 {
        return None;
    }
    let (u, v) = w.split_at(n / 2);
    (u == v && is_lyndon(u)).then_some(u)
}

/// All distinct arrangements of a sorted multiset, in lexicographic order.
pub fn multiset_permutations(sorted: &[u16]) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur: Word = sorted.iter().copied().collect();
    if cur.is_empty() {
        return out;
    }
    loop {
        out.push(cur.clone());
        // next permutation
        let n = cur.len();
        let mut i = n - 1;
        while i > 0 && cur[i - 1] >= cur[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while cur[j] <= cur[i - 1] {
            j -= 1;
        }
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Lyndon words with the given (sorted) letter content.
pub fn lyndon_words_with_content(sorted: &[u16]) -> Vec<Word> {
    // a Lyndon word starts with its least letter
    multiset_permutations(sorted).into_iter().filter(|w| is_lyndon(w)).collect()
}

/// Sorted multisets of size `len` over `0..alphabet`.
pub fn contents(alphabet: u16, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Word::new();
    fn rec(start: u16, alphabet: u16, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for l in start..alphabet {
            cur.push(l);
            rec(l, alphabet, len, cur, out);
            cur.pop();
        }
    }
    if len > 0 {
        rec(0, alphabet, len, &mut cur, &mut out);
    }
    out
}

pub fn sorted_content(w: &[u16]) -> Word {
    let mut c: Word = w.iter().copied().collect();
    c.sort_unstable();
    c
}
