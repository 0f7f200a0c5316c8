//! Normalized positive linear and multilinear maps built from isometries.

use serde::{Deserialize, Serialize};

use crate::cmat::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::rng::{orthonormal_columns, rng_from_seed};

/// Number of Kraus operators in generated `kraus` maps.
pub const KRAUS_BLOCKS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Compression,
    Kraus,
    Trace,
    TensorCompression,
}

impl std::str::FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compression" => Ok(MapKind::Compression),
            "kraus" => Ok(MapKind::Kraus),
            "trace" => Ok(MapKind::Trace),
            "tensor_compression" => Ok(MapKind::TensorCompression),
            other => Err(Error::invalid(format!("unknown map kind `{other}`"))),
        }
    }
}

/// Serializable description; the isometries are regenerated from `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDescriptor {
    pub kind: MapKind,
    pub n: usize,
    pub l: usize,
    #[serde(default = "one")]
    pub k: usize,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

impl MapDescriptor {
    pub fn build(&self) -> Result<MapSpec> {
        gen_map(self.kind, self.n, self.l, self.k, self.seed)
    }
}

/// A `rows x cols` matrix with orthonormal columns, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Isometry {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl Isometry {
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        let cols = columns.len();
        let mut data = vec![C64::new(0.0, 0.0); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                data[i * cols + j] = c[i];
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let cols: Vec<Vec<C64>> = (0..n)
            .map(|j| (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect())
            .collect();
        Self::from_columns(n, &cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    /// `V* X V`.
    pub fn compress(&self, x: &CMatrix) -> CMatrix {
        let (r, c) = (self.rows, self.cols);
        debug_assert_eq!(x.n(), r);
        // XV first, r x c
        let mut xv = vec![C64::new(0.0, 0.0); r * c];
        for i in 0..r {
            for k in 0..r {
                let xik = x[(i, k)];
                if xik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..c {
                    xv[i * c + j] += xik * self.data[k * c + j];
                }
            }
        }
        CMatrix::from_fn(c, |p, q| (0..r).map(|i| self.data[i * c + p].conj() * xv[i * c + q]).sum())
    }

    /// `V* V`, which is `I` for a true isometry.
    pub fn gram(&self) -> CMatrix {
        self.compress(&CMatrix::identity(self.rows))
    }
}

/// A concrete map `M_n^k -> M_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct MapSpec {
    pub kind: MapKind,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    blocks: Vec<Isometry>,
}

impl MapSpec {
    /// `X -> X` on `M_n`.
    pub fn identity(n: usize) -> Self {
        Self { kind: MapKind::Compression, n, l: n, k: 1, blocks: vec![Isometry::identity(n)] }
    }

    pub fn blocks(&self) -> &[Isometry] {
        &self.blocks
    }

    pub fn apply(&self, args: &[CMatrix]) -> Result<CMatrix> {
        if args.len() != self.k {
            return Err(Error::invalid(format!("map has arity {}, got {} arguments", self.k, args.len())));
        }
        for a in args {
            if a.n() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, got: a.n() });
            }
        }
        Ok(match self.kind {
            MapKind::Compression => self.blocks[0].compress(&args[0]),
            MapKind::Kraus => {
                let mut acc = CMatrix::zeros(self.l);
                for v in &self.blocks {
                    acc = &acc + &v.compress(&args[0]);
                }
                acc
            }
            MapKind::Trace => CMatrix::identity(self.l).scale_c(args[0].trace() / self.n as f64),
            MapKind::TensorCompression => {
                let big = args[1..].iter().fold(args[0].clone(), |acc, a| acc.kron(a));
                self.blocks[0].compress(&big)
            }
        })
    }

    /// Applies a linear map (arity 1).
    pub fn apply1(&self, a: &CMatrix) -> Result<CMatrix> {
        self.apply(std::slice::from_ref(a))
    }

    /// `‖Φ(I, ..., I) - I_l‖_F`.
    pub fn normalization_defect(&self) -> Result<f64> {
        let ids = vec![CMatrix::identity(self.n); self.k];
        Ok((&self.apply(&ids)? - &CMatrix::identity(self.l)).norm_fro())
    }

    pub fn is_normalized(&self, tol: f64) -> Result<bool> {
        Ok(self.normalization_defect()? <= tol)
    }
}

/// Seeded normalized map. Isometries come from orthonormalizing a complex
/// Gaussian sample; Kraus families split one tall isometry into blocks.
pub fn gen_map(kind: MapKind, n: usize, l: usize, k: usize, seed: u64) -> Result<MapSpec> {
    if n == 0 || l == 0 || k == 0 {
        return Err(Error::invalid("map dimensions and arity must be positive"));
    }
    if k != 1 && kind != MapKind::TensorCompression {
        return Err(Error::invalid(format!("{kind:?} maps are linear; arity must be 1, got {k}")));
    }
    let mut rng = rng_from_seed(seed);
    let blocks = match kind {
        MapKind::Compression => {
            if l > n {
                return Err(Error::invalid(format!("compression needs l <= n, got l = {l}, n = {n}")));
            }
            vec![Isometry::from_columns(n, &orthonormal_columns(n, l, &mut rng))]
        }
        MapKind::TensorCompression => {
            let dim = n
                .checked_pow(k as u32)
                .filter(|&d| d <= 4096)
                .ok_or_else(|| Error::invalid(format!("n^k too large for n = {n}, k = {k}")))?;
            if l > dim {
                return Err(Error::invalid(format!("tensor compression needs l <= n^k = {dim}, got l = {l}")));
            }
            vec![Isometry::from_columns(dim, &orthonormal_columns(dim, l, &mut rng))]
        }
        MapKind::Kraus => {
            let tall = KRAUS_BLOCKS * n;
            if l > tall {
                return Err(Error::invalid(format!("kraus map needs l <= {tall}, got l = {l}")));
            }
            let cols = orthonormal_columns(tall, l, &mut rng);
            (0..KRAUS_BLOCKS)
                .map(|b| {
                    let part: Vec<Vec<C64>> = cols.iter().map(|c| c[b * n..(b + 1) * n].to_vec()).collect();
                    Isometry::from_columns(n, &part)
                })
                .collect()
        }
        MapKind::Trace => Vec::new(),
    };
    Ok(MapSpec { kind, n, l, k, blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_compression_is_identity() {
        let a = CMatrix::from_fn(3, |i, j| C64::new(i as f64, j as f64 - 1.0));
        assert_eq!(MapSpec::identity(3).apply1(&a).unwrap(), a);
    }

    #[test]
    fn trace_map_normalized() {
        let phi = gen_map(MapKind::Trace, 4, 2, 1, 0).unwrap();
        assert_eq!(phi.apply1(&CMatrix::identity(4)).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn square_compression_unitary() {
        let phi = gen_map(MapKind::Compression, 4, 4, 1, 9).unwrap();
        let v = &phi.blocks()[0];
        let u = CMatrix::from_fn(4, |i, j| v.get(i, j));
        assert!((&(&u * &u.adjoint()) - &CMatrix::identity(4)).norm_fro() < 1e-12);
    }

    #[test]
    fn generated_maps_are_normalized() {
        for (kind, n, l, k) in [
            (MapKind::Compression, 4, 2, 1),
            (MapKind::Kraus, 3, 3, 1),
            (MapKind::Kraus, 2, 5, 1),
            (MapKind::TensorCompression, 2, 3, 3),
        ] {
            let phi = gen_map(kind, n, l, k, 17).unwrap();
            assert!(phi.normalization_defect().unwrap() < 1e-12, "{kind:?}");
        }
    }

    #[test]
    fn impossible_dimensions() {
        assert!(gen_map(MapKind::Compression, 2, 3, 1, 0).is_err());
        assert!(gen_map(MapKind::TensorCompression, 2, 5, 2, 0).is_err());
        assert!(gen_map(MapKind::Kraus, 2, 2, 2, 0).is_err());
        let phi = gen_map(MapKind::TensorCompression, 2, 2, 2, 0).unwrap();
        assert!(phi.apply1(&CMatrix::identity(2)).is_err());
        assert!(phi.apply(&[CMatrix::identity(2), CMatrix::identity(3)]).is_err());
    }
}
