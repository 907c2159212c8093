use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::example::Alphabet;
use crate::repr::SuperstringRep;

/// Greedy shortest common superstring over `strings`, as a representation
/// whose window is the longest input length.
pub fn greedy_superstring<S: AsRef<[u8]>>(alphabet: Alphabet, strings: &[S]) -> Result<SuperstringRep> {
    for s in strings {
        alphabet.check(s.as_ref())?;
    }
    let window = strings.iter().map(|s| s.as_ref().len()).max().unwrap_or(0);
    let text = greedy_superstring_bytes(strings)?;
    SuperstringRep::new(alphabet, text, window)
}

/// Repeatedly merges the pair with the longest suffix-prefix overlap.
///
/// Duplicates and strings contained in other strings are dropped first. Among
/// merges of equal overlap the lexicographically smallest merged string wins,
/// then the smaller pair of input indices (after sorting). Chains left with no
/// overlap at all are concatenated in the order giving the lexicographically
/// smallest result.
pub fn greedy_superstring_bytes<S: AsRef<[u8]>>(strings: &[S]) -> Result<Vec<u8>> {
    if strings.is_empty() {
        return Err(Error::Parameter("superstring of an empty set".into()));
    }
    if strings.iter().any(|s| s.as_ref().is_empty()) {
        return Err(Error::Parameter("superstring input contains an empty string".into()));
    }
    let items = reduce_inputs(strings);
    let mut g = Greedy::new(&items);
    let max_len = items.iter().map(|s| s.len()).max().unwrap_or(0);
    for level in (1..max_len).rev() {
        g.merge_level(level);
    }
    Ok(g.finish())
}

/// Sorted, deduplicated, substring-free copy of the input.
fn reduce_inputs<S: AsRef<[u8]>>(strings: &[S]) -> Vec<&[u8]> {
    let mut v: Vec<&[u8]> = strings.iter().map(|s| s.as_ref()).collect();
    v.sort_unstable();
    v.dedup();
    // Longest first so a string only needs checking against longer ones.
    let mut by_len: Vec<usize> = (0..v.len()).collect();
    by_len.sort_by_key(|&i| std::cmp::Reverse(v[i].len()));
    let mut keep = vec![true; v.len()];
    let mut kept_so_far: Vec<usize> = Vec::new();
    for &i in &by_len {
        if kept_so_far.iter().any(|&j| v[j].len() > v[i].len() && contains(v[j], v[i])) {
            keep[i] = false;
        } else {
            kept_so_far.push(i);
        }
    }
    v.into_iter().zip(keep).filter_map(|(s, k)| k.then_some(s)).collect()
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

const HASH_BASE: u64 = 0x100000001b3;

struct Greedy<'a> {
    items: Vec<&'a [u8]>,
    prefix_hash: Vec<Vec<u64>>,
    powers: Vec<u64>,
    next: Vec<Option<(usize, usize)>>,
    has_prev: Vec<bool>,
    // For chain ends: the opposite end of the chain.
    head_of_tail: Vec<usize>,
    tail_of_head: Vec<usize>,
}

impl<'a> Greedy<'a> {
    fn new(items: &[&'a [u8]]) -> Self {
        let max_len = items.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut powers = vec![1u64; max_len + 1];
        for i in 1..=max_len {
            powers[i] = powers[i - 1].wrapping_mul(HASH_BASE);
        }
        let prefix_hash = items
            .iter()
            .map(|s| {
                let mut h = Vec::with_capacity(s.len() + 1);
                h.push(0u64);
                for &c in s.iter() {
                    let last = *h.last().unwrap();
                    h.push(last.wrapping_mul(HASH_BASE).wrapping_add(c as u64 + 1));
                }
                h
            })
            .collect();
        let c = items.len();
        Self {
            items: items.to_vec(),
            prefix_hash,
            powers,
            next: vec![None; c],
            has_prev: vec![false; c],
            head_of_tail: (0..c).collect(),
            tail_of_head: (0..c).collect(),
        }
    }

    fn hash_range(&self, i: usize, start: usize, end: usize) -> u64 {
        let h = &self.prefix_hash[i];
        h[end].wrapping_sub(h[start].wrapping_mul(self.powers[end - start]))
    }

    fn is_tail(&self, i: usize) -> bool {
        self.next[i].is_none()
    }

    /// Accepts every still-valid merge with overlap exactly `level`.
    fn merge_level(&mut self, level: usize) {
        let mut heads: HashMap<u64, Vec<usize>> = HashMap::new();
        for (y, s) in self.items.iter().enumerate() {
            if !self.has_prev[y] && s.len() > level {
                heads.entry(self.hash_range(y, 0, level)).or_default().push(y);
            }
        }
        if heads.is_empty() {
            return;
        }
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for (x, s) in self.items.iter().enumerate() {
            if !self.is_tail(x) || s.len() <= level {
                continue;
            }
            let key = self.hash_range(x, s.len() - level, s.len());
            if let Some(ys) = heads.get(&key) {
                for &y in ys {
                    if y != x && s[s.len() - level..] == self.items[y][..level] {
                        cands.push((x, y));
                    }
                }
            }
        }
        loop {
            cands.retain(|&(x, y)| self.is_tail(x) && !self.has_prev[y] && self.head_of_tail[x] != y);
            let Some(best) = self.best_candidate(&cands, level) else { break };
            self.link(best.0, best.1, level);
        }
    }

    fn best_candidate(&self, cands: &[(usize, usize)], level: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for &c in cands {
            best = match best {
                None => Some(c),
                Some(b) => match self.compare_merges(c, b, level) {
                    Ordering::Less => Some(c),
                    Ordering::Equal if c < b => Some(c),
                    _ => Some(b),
                },
            };
        }
        best
    }

    fn link(&mut self, x: usize, y: usize, level: usize) {
        let head = self.head_of_tail[x];
        let tail = self.tail_of_head[y];
        self.next[x] = Some((y, level));
        self.has_prev[y] = true;
        self.tail_of_head[head] = tail;
        self.head_of_tail[tail] = head;
    }

    /// Slices spelling the chain that starts at `head`, with the first `skip` bytes dropped.
    fn chain_slices(&self, head: usize, skip: usize) -> impl Iterator<Item = &'a [u8]> + '_ {
        let mut cur = Some((head, skip));
        std::iter::from_fn(move || {
            let (i, s) = cur?;
            cur = self.next[i];
            Some(&self.items[i][s..])
        })
    }

    /// Lexicographic comparison of the strings produced by two candidate merges.
    fn compare_merges(&self, a: (usize, usize), b: (usize, usize), level: usize) -> Ordering {
        let ha = self.head_of_tail[a.0];
        let hb = self.head_of_tail[b.0];
        if ha == hb {
            // Same left chain: only the appended parts differ.
            return compare_streams(self.chain_slices(a.1, level), self.chain_slices(b.1, level));
        }
        let sa = self.chain_slices(ha, 0).chain(self.chain_slices(a.1, level));
        let sb = self.chain_slices(hb, 0).chain(self.chain_slices(b.1, level));
        compare_streams(sa, sb)
    }

    fn finish(self) -> Vec<u8> {
        let mut chains: Vec<Vec<u8>> = (0..self.items.len())
            .filter(|&i| !self.has_prev[i])
            .map(|h| self.chain_slices(h, 0).flatten().copied().collect())
            .collect();
        chains.sort_by(|a, b| {
            let ab = a.iter().chain(b.iter());
            let ba = b.iter().chain(a.iter());
            ab.cmp(ba).then_with(|| a.cmp(b))
        });
        chains.concat()
    }
}

fn compare_streams<'s>(a: impl Iterator<Item = &'s [u8]>, b: impl Iterator<Item = &'s [u8]>) -> Ordering {
    let mut a = a.filter(|s| !s.is_empty());
    let mut b = b.filter(|s| !s.is_empty());
    let (mut sa, mut sb): (&[u8], &[u8]) = (&[], &[]);
    loop {
        if sa.is_empty() {
            sa = a.next().unwrap_or(&[]);
        }
        if sb.is_empty() {
            sb = b.next().unwrap_or(&[]);
        }
        match (sa.is_empty(), sb.is_empty()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let k = sa.len().min(sb.len());
        match sa[..k].cmp(&sb[..k]) {
            Ordering::Equal => {
                sa = &sa[k..];
                sb = &sb[k..];
            }
            ord => return ord,
        }
    }
}
