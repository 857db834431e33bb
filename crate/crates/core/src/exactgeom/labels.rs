//! Label sets over `1..=n` stored as bitmasks (bit `i-1` stands for label `i`).

pub type LabelSet = u64;

pub const MAX_LABELS: usize = 63;

pub fn set_of(labels: &[usize]) -> LabelSet {
    labels.iter().fold(0, |m, &l| m | (1u64 << (l - 1)))
}

pub fn labels_of(s: LabelSet) -> Vec<usize> {
    (0..64).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

pub fn full_set(n: usize) -> LabelSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn card(s: LabelSet) -> usize {
    s.count_ones() as usize
}

pub fn contains(s: LabelSet, label: usize) -> bool {
    s >> (label - 1) & 1 == 1
}

pub fn is_subset(a: LabelSet, b: LabelSet) -> bool {
    a & !b == 0
}

/// Formats a set as `{1,4}`.
pub fn fmt_set(s: LabelSet) -> String {
    let parts: Vec<String> = labels_of(s).iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Compact form used in tile names: labels concatenated (`124`), comma
/// separated once a label exceeds 9, and `∅` for the empty set.
pub fn compact(s: LabelSet) -> String {
    let ls = labels_of(s);
    if ls.is_empty() {
        "∅".to_string()
    } else if ls.iter().all(|&l| l < 10) {
        ls.iter().map(|l| l.to_string()).collect()
    } else {
        ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Parses compact digit strings (`"124"`) or comma lists (`"1,2,4"`); `-` or
/// an empty string is the empty set.
pub fn parse_set(s: &str) -> Option<LabelSet> {
    let t = s.trim();
    if t.is_empty() || t == "-" || t == "∅" {
        return Some(0);
    }
    let mut m = 0u64;
    if t.contains(',') {
        for p in t.split(',') {
            let l: usize = p.trim().parse().ok()?;
            if l == 0 || l > MAX_LABELS {
                return None;
            }
            m |= 1 << (l - 1);
        }
    } else {
        for c in t.chars() {
            let l = c.to_digit(10)? as usize;
            if l == 0 {
                return None;
            }
            m |= 1 << (l - 1);
        }
    }
    Some(m)
}

/// All subsets of `s` of the given size, in increasing numeric order.
pub fn subsets_of_size(s: LabelSet, size: usize) -> Vec<LabelSet> {
    let ls = labels_of(s);
    let m = ls.len();
    let mut out = Vec::new();
    if size > m {
        return out;
    }
    if size == 0 {
        return vec![0];
    }
    // Gosper's hack over index masks of the elements of `s`
    let limit: u128 = 1u128 << m;
    let mut c: u128 = (1u128 << size) - 1;
    while c < limit {
        let mut x = 0u64;
        for (i, &l) in ls.iter().enumerate() {
            if c >> i & 1 == 1 {
                x |= 1 << (l - 1);
            }
        }
        out.push(x);
        let u = c & c.wrapping_neg();
        let v = c + u;
        c = v + (((v ^ c) / u) >> 2);
    }
    out.sort_unstable();
    out
}

/// All subsets of `s` (including the empty set and `s`).
pub fn all_subsets(s: LabelSet) -> Vec<LabelSet> {
    let mut out = Vec::with_capacity(1 << card(s));
    let mut sub: LabelSet = 0;
    loop {
        out.push(sub);
        if sub == s {
            break;
        }
        sub = (sub.wrapping_sub(s)) & s;
    }
    out
}
