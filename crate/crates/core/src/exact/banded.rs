/// Symmetric matrix with half-bandwidth at most 4, stored by diagonals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSymmetric {
    dim: usize,
    /// `bands[k][i] = H[i][i+k]`
    bands: [Vec<f64>; 5],
}

pub const HALF_BANDWIDTH: usize = 4;

impl BandedSymmetric {
    pub fn zeros(dim: usize) -> Self {
        let bands = std::array::from_fn(|k| vec![0.0; dim.saturating_sub(k)]);
        Self { dim, bands }
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        m.bands[0].copy_from_slice(diag);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `H[i][j]` and its mirror. Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        assert!(k <= HALF_BANDWIDTH, "entry ({i}, {j}) outside the band");
        self.bands[k][lo] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let k = hi - lo;
        if k > HALF_BANDWIDTH || hi >= self.dim {
            0.0
        } else {
            self.bands[k][lo]
        }
    }

    pub fn band(&self, k: usize) -> &[f64] {
        &self.bands[k]
    }

    /// True when only even offsets are populated, i.e. even and odd basis
    /// states decouple.
    pub fn conserves_parity(&self) -> bool {
        self.bands[1].iter().chain(&self.bands[3]).all(|&v| v == 0.0)
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i.saturating_sub(HALF_BANDWIDTH)..(i + HALF_BANDWIDTH + 1).min(n) {
                a[i * n + j] = self.get(i, j);
            }
        }
        a
    }

    /// Dense sub-matrix on the basis states of one parity (0 even, 1 odd).
    pub fn parity_block(&self, parity: usize) -> (usize, Vec<f64>) {
        let idx: Vec<usize> = (parity..self.dim).step_by(2).collect();
        let m = idx.len();
        let mut a = vec![0.0; m * m];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[r * m + c] = self.get(i, j);
            }
        }
        (m, a)
    }
}
