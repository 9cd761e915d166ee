//! Partitions and index tuples used to enumerate graded bases.

/// Partitions of `n` as non-increasing part lists, lexicographically
/// descending (`[n]` first, `[1,…,1]` last).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out
}

/// Tuples `0 ≤ t₁ ≤ t₂ ≤ … ≤ t_len` with the given sum, in lexicographic
/// order of the tuple read left to right.
pub fn nondecreasing_tuples(len: usize, sum: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, rest: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let left = len - cur.len();
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // every remaining entry is at least `min`
        let mut t = min;
        while t as u64 * left as u64 <= rest as u64 {
            cur.push(t);
            rec(len, rest - t, t, cur, out);
            cur.pop();
            t += 1;
        }
    }
    rec(len, sum, 0, &mut cur, &mut out);
    out
}

/// p(n).
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for i in part..=n {
            p[i] += p[i - part];
        }
    }
    p[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_four() {
        assert_eq!(
            partitions(4),
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
        for n in 0..12 {
            assert_eq!(partitions(n).len() as u64, partition_count(n));
        }
    }

    #[test]
    fn tuples() {
        assert_eq!(nondecreasing_tuples(2, 2), vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(nondecreasing_tuples(0, 0), vec![Vec::<u32>::new()]);
        assert!(nondecreasing_tuples(0, 1).is_empty());
        // partitions of 5 into at most 3 parts
        assert_eq!(nondecreasing_tuples(3, 5).len(), 5);
    }
}
