use super::{validated_group, ConstructedAction, FamilyError, FamilySpec};
use crate::formulas::group_order;
use crate::Permutation;

/// Digits of `index` in base `m`, most significant first.
pub(crate) fn tuple(mut index: usize, m: usize, r: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for slot in t.iter_mut().rev() {
        *slot = index % m;
        index /= m;
    }
    t
}

pub(crate) fn tuple_index(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

/// The permutation of `Γ^r` applying `h` in coordinate `coord`.
pub(crate) fn in_coordinate(h: &Permutation, coord: usize, r: usize) -> Permutation {
    let m = h.degree();
    let n = m.pow(r as u32);
    let images = (0..n).map(|i| {
        let mut t = tuple(i, m, r);
        t[coord] = h.apply(t[coord]);
        tuple_index(&t, m)
    });
    Permutation::from_images(images).expect("coordinate action is a bijection")
}

/// The permutation of `Γ^r` moving coordinate `i` to position `sigma(i)`.
fn permute_coordinates(sigma: &Permutation, m: usize) -> Permutation {
    let r = sigma.degree();
    let images = (0..m.pow(r as u32)).map(|i| {
        let t = tuple(i, m, r);
        let mut out = vec![0; r];
        for (c, &x) in t.iter().enumerate() {
            out[sigma.apply(c)] = x;
        }
        tuple_index(&out, m)
    });
    Permutation::from_images(images).expect("coordinate permutation is a bijection")
}

/// `H ≀ S_r` in product action on `Γ^r`, tuples in lexicographic order.
pub(super) fn product_action(spec: &FamilySpec, inner: ConstructedAction, r: usize) -> Result<ConstructedAction, FamilyError> {
    let m = inner.n;
    let n = m.pow(r as u32);
    let mut gens: Vec<Permutation> = inner.group.generators().iter().map(|h| in_coordinate(h, 0, r)).collect();
    let swap = Permutation::from_cycles(r, &[&[0, 1]])?;
    let shift = Permutation::from_cycles(r, &[&(0..r).collect::<Vec<_>>()])?;
    gens.push(permute_coordinates(&swap, m));
    gens.push(permute_coordinates(&shift, m));
    let group = validated_group(spec, n, gens, &group_order(spec)?)?;
    let labels = (0..n)
        .map(|i| {
            let parts: Vec<&str> = tuple(i, m, r).iter().map(|&x| inner.labels[x].as_str()).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut action = ConstructedAction::new(spec.clone(), group, labels);
    action.inner = Some(Box::new(inner));
    Ok(action)
}

#[cfg(test)]
mod tests {
    use crate::families::build;

    #[test]
    fn s3_wr_s2() {
        let a = build(&"WreathProduct(r=2,inner=SymSubsets(m=3,k=1))".parse().unwrap()).unwrap();
        assert_eq!((a.n, a.group.order()), (9, 72u32.into()));
        assert_eq!(a.labels[1], "({0},{1})");
    }

    #[test]
    fn subsets_squared() {
        let a = build(&"WreathProduct(r=2,inner=SymSubsets(m=5,k=2))".parse().unwrap()).unwrap();
        assert_eq!(a.n, 100);
        assert!(a.group.is_primitive().unwrap());
    }
}
