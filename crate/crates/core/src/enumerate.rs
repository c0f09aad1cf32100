//! Small combinatorial enumerators shared by the section and weight code.

/// All `k`-subsets of `1..=n` as increasing vectors, lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(current.clone());
        // Rightmost position that can still be incremented.
        let Some(p) = (0..k).rev().find(|&p| current[p] < n - (k - 1 - p)) else {
            return out;
        };
        current[p] += 1;
        for q in p + 1..k {
            current[q] = current[q - 1] + 1;
        }
    }
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers,
/// in lexicographically decreasing order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut buf = vec![0u32; parts];
    fill(total, 0, &mut buf, &mut out);
    out
}

fn fill(remaining: u32, pos: usize, buf: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(buf.clone());
        return;
    }
    for v in (0..=remaining).rev() {
        buf[pos] = v;
        fill(remaining - v, pos + 1, buf, out);
    }
}

/// All vectors in `ℕ^parts` with entry sum at most `bound`, ordered by sum and
/// then lexicographically decreasing.
pub fn bounded_vectors(parts: usize, bound: u32) -> Vec<Vec<u32>> {
    (0..=bound).flat_map(|d| compositions(d, parts)).collect()
}
