use super::Permutation;

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smallest block of imprimitivity containing `alpha` and `beta` for the group
/// generated by `generators` (the whole domain if there is none smaller).
pub fn minimal_block(degree: usize, generators: &[Permutation], alpha: usize, beta: usize) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..degree).collect();
    let mut queue = Vec::new();
    let (a, b) = (alpha.min(beta), alpha.max(beta));
    if a != b {
        parent[b] = a;
        queue.push(b);
    }
    while let Some(x) = queue.pop() {
        for g in generators {
            let rx = find(&mut parent, x);
            let gx = find(&mut parent, g.apply(x));
            let grx = find(&mut parent, g.apply(rx));
            if gx != grx {
                let (keep, drop) = (gx.min(grx), gx.max(grx));
                parent[drop] = keep;
                queue.push(drop);
            }
        }
    }
    let root = find(&mut parent, alpha);
    (0..degree).filter(|&x| find(&mut parent, x) == root).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four_has_blocks() {
        let g = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(minimal_block(4, &[g.clone()], 0, 2), vec![0, 2]);
        assert_eq!(minimal_block(4, &[g], 0, 1), vec![0, 1, 2, 3]);
    }
}
