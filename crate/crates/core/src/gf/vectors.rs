//! Dense indexing of `GF(q)^d`: vector `(v_0, …, v_{d-1})` has index
//! `Σ v_i q^{d-1-i}`, so coordinate 0 is the most significant digit and index
//! order is lexicographic order.

pub fn vector_count(q: u32, d: usize) -> usize {
    (q as usize).pow(d as u32)
}

pub fn index_to_vector(mut index: usize, q: u32, d: usize) -> Vec<u8> {
    let mut v = vec![0u8; d];
    for slot in v.iter_mut().rev() {
        *slot = (index % q as usize) as u8;
        index /= q as usize;
    }
    v
}

pub fn vector_to_index(v: &[u8], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

/// All vectors of `GF(q)^d` in index order.
pub fn all_vectors(q: u32, d: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..vector_count(q, d)).map(move |i| index_to_vector(i, q, d))
}

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
pub fn normalize(field: &super::Field, v: &mut [u8]) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = field.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = field.mul(*x, inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for i in 0..vector_count(3, 4) {
            assert_eq!(vector_to_index(&index_to_vector(i, 3, 4), 3), i);
        }
        assert_eq!(index_to_vector(5, 2, 3), vec![1, 0, 1]);
    }
}
