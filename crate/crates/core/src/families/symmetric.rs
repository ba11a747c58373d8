use std::collections::HashMap;

use super::{validated_group, ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::group_order;
use crate::Permutation;

/// Two generators of `S_m` (`alternating = false`) or `A_m`.
pub(crate) fn natural_generators(m: usize, alternating: bool) -> Vec<Permutation> {
    let cycle = |pts: Vec<usize>| Permutation::from_cycles(m, &[&pts]).expect("valid cycle");
    if !alternating {
        return vec![cycle(vec![0, 1]), cycle((0..m).collect())];
    }
    let mut gens = vec![cycle(vec![0, 1, 2])];
    if m > 3 {
        gens.push(if m % 2 == 1 {
            cycle((0..m).collect())
        } else {
            cycle((1..m).collect())
        });
    }
    gens
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn k_subsets(m: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < m - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn set_label(s: &[u32]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Permutation of `points` induced by `g`, where `canon` maps an image to its key.
fn induced<T, K>(g: &Permutation, points: &[T], index: &HashMap<K, usize>, image: impl Fn(&T, &Permutation) -> K) -> Permutation
where
    K: std::hash::Hash + Eq,
{
    let images = points.iter().map(|p| index[&image(p, g)]);
    Permutation::from_images(images).expect("induced action is a bijection")
}

/// The permutation of `k`-subsets of `0..m` induced by `g`.
pub(crate) fn subset_action(g: &Permutation, subsets: &[Vec<u32>], index: &HashMap<Vec<u32>, usize>) -> Permutation {
    induced(g, subsets, index, |s, g| {
        let mut img: Vec<u32> = s.iter().map(|&x| g.apply(x as usize) as u32).collect();
        img.sort_unstable();
        img
    })
}

pub(super) fn on_subsets(spec: &FamilySpec, m: usize, k: usize, alternating: bool) -> Result<ConstructedAction, FamilyError> {
    let subsets = k_subsets(m, k);
    let index: HashMap<Vec<u32>, usize> = subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let gens = natural_generators(m, alternating)
        .iter()
        .map(|g| subset_action(g, &subsets, &index))
        .collect();
    let group = validated_group(spec, subsets.len(), gens, &group_order(spec)?)?;
    let labels = subsets.iter().map(|s| set_label(s)).collect();
    Ok(ConstructedAction::new(spec.clone(), group, labels))
}

/// Partitions of `0..ab` into `b` blocks of size `a`, each block sorted and
/// blocks ordered by their least element; listed in lexicographic order.
fn partitions(a: usize, b: usize) -> Vec<Vec<Vec<u32>>> {
    fn rec(a: usize, free: &[u32], cur: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(cur.clone());
            return;
        };
        for pick in k_subsets(rest.len(), a - 1) {
            let mut block = vec![first];
            block.extend(pick.iter().map(|&i| rest[i as usize]));
            let remaining: Vec<u32> = rest.iter().copied().filter(|x| !block.contains(x)).collect();
            cur.push(block);
            rec(a, &remaining, cur, out);
            cur.pop();
        }
    }
    let free: Vec<u32> = (0..(a * b) as u32).collect();
    let mut out = Vec::new();
    rec(a, &free, &mut Vec::new(), &mut out);
    out
}

/// Block number of each element, blocks numbered in order of least element.
fn partition_key(blocks: &[Vec<u32>], m: usize) -> Vec<u8> {
    let mut owner = vec![0usize; m];
    for (i, blk) in blocks.iter().enumerate() {
        for &x in blk {
            owner[x as usize] = i;
        }
    }
    let mut renumber = vec![u8::MAX; blocks.len()];
    let mut next = 0u8;
    owner
        .iter()
        .map(|&o| {
            if renumber[o] == u8::MAX {
                renumber[o] = next;
                next += 1;
            }
            renumber[o]
        })
        .collect()
}

pub(super) fn on_partitions(spec: &FamilySpec, a: usize, b: usize) -> Result<ConstructedAction, FamilyError> {
    let m = a * b;
    let parts = partitions(a, b);
    let index: HashMap<Vec<u8>, usize> = parts.iter().enumerate().map(|(i, p)| (partition_key(p, m), i)).collect();
    let gens = natural_generators(m, false)
        .iter()
        .map(|g| {
            induced(g, &parts, &index, |p, g| {
                let img: Vec<Vec<u32>> = p
                    .iter()
                    .map(|blk| blk.iter().map(|&x| g.apply(x as usize) as u32).collect())
                    .collect();
                partition_key(&img, m)
            })
        })
        .collect();
    let group = validated_group(spec, parts.len(), gens, &group_order(spec)?)?;
    let labels = parts
        .iter()
        .map(|p| p.iter().map(|blk| set_label(blk)).collect::<Vec<_>>().join("|"))
        .collect();
    Ok(ConstructedAction::new(spec.clone(), group, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        let s = k_subsets(5, 2);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], vec![0, 1]);
        assert_eq!(s[9], vec![3, 4]);
        assert_eq!(k_subsets(4, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(2, 3).len(), 15);
        assert_eq!(partitions(4, 2).len(), 35);
        assert_eq!(partitions(2, 4).len(), 105);
        let p = partitions(2, 2);
        assert_eq!(p[0], vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn alternating_generators() {
        for m in 4..9 {
            let g = crate::PermGroup::new(m, natural_generators(m, true)).unwrap();
            assert_eq!(g.order(), crate::formulas::degree::factorial(m as u64) / 2u32);
        }
    }
}
