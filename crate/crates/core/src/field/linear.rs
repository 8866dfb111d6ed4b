//! GF(2)-linear maps on packed bit vectors.

/// A linear map on `n`-bit vectors evaluated through per-byte lookup tables.
#[derive(Clone, Debug)]
pub(crate) struct ByteTable {
    chunks: usize,
    table: Vec<u128>,
}

impl ByteTable {
    /// `images[i]` is the image of the unit vector `e_i`.
    pub(crate) fn from_images(images: &[u128]) -> Self {
        let chunks = images.len().div_ceil(8);
        let mut table = vec![0u128; chunks * 256];
        for c in 0..chunks {
            let base = c * 256;
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let bit = 8 * c + low;
                let img = images.get(bit).copied().unwrap_or(0);
                table[base + byte] = table[base + (byte & (byte - 1))] ^ img;
            }
        }
        Self { chunks, table }
    }

    #[inline]
    pub(crate) fn apply(&self, x: u128) -> u128 {
        let mut r = 0;
        for c in 0..self.chunks {
            r ^= self.table[c * 256 + ((x >> (8 * c)) & 0xff) as usize];
        }
        r
    }
}

/// Gaussian elimination of a linear map given by column images, kept in a
/// form that answers preimage queries.
#[derive(Clone, Debug)]
pub(crate) struct Preimage {
    // rows[p] = (image with top bit p, source vector mapping to it)
    rows: Vec<Option<(u128, u128)>>,
}

impl Preimage {
    /// Returns the eliminator and a basis of the kernel.
    pub(crate) fn new(images: &[u128]) -> (Self, Vec<u128>) {
        let mut rows = vec![None; 128];
        let mut kernel = Vec::new();
        for (i, &img) in images.iter().enumerate() {
            let (mut v, mut s) = (img, 1u128 << i);
            loop {
                if v == 0 {
                    kernel.push(s);
                    break;
                }
                let p = (127 - v.leading_zeros()) as usize;
                match rows[p] {
                    Some((rv, rs)) => {
                        v ^= rv;
                        s ^= rs;
                    }
                    None => {
                        rows[p] = Some((v, s));
                        break;
                    }
                }
            }
        }
        (Self { rows }, kernel)
    }

    /// Some `x` with `map(x) = target`, if the target is in the image.
    pub(crate) fn solve(&self, mut target: u128) -> Option<u128> {
        let mut x = 0;
        while target != 0 {
            let p = (127 - target.leading_zeros()) as usize;
            let (rv, rs) = self.rows[p]?;
            target ^= rv;
            x ^= rs;
        }
        Some(x)
    }
}

/// Reduced row echelon form of a set of vectors, pivots at the top bit,
/// ordered by ascending pivot.
pub(crate) fn rref(vectors: &[u128]) -> Vec<u128> {
    let mut rows: Vec<Option<u128>> = vec![None; 128];
    for &v0 in vectors {
        let mut v = v0;
        while v != 0 {
            let p = (127 - v.leading_zeros()) as usize;
            match rows[p] {
                Some(r) => v ^= r,
                None => {
                    rows[p] = Some(v);
                    break;
                }
            }
        }
    }
    let pivots: Vec<usize> = (0..128).filter(|&p| rows[p].is_some()).collect();
    for &p in &pivots {
        let r = rows[p].unwrap();
        for &other in &pivots {
            if other != p {
                if let Some(o) = rows[other] {
                    if (o >> p) & 1 == 1 {
                        rows[other] = Some(o ^ r);
                    }
                }
            }
        }
    }
    pivots.into_iter().map(|p| rows[p].unwrap()).collect()
}
