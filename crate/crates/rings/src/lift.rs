//! Metric-space lifts: turn one mode of an attributed graph (structure or
//! features) into a [`DistanceMatrix`] over the node set.
//!
//! Structural lifts are spectral for the most part and rely on a Jacobi
//! eigensolver for real symmetric matrices. Structural lifts demand connected
//! input; decomposition of disconnected graphs is owned by the caller (see
//! [`crate::complement`]).

use ndarray::{Array1, Array2};

use crate::data::{AttributedGraph, DistanceMatrix};
use crate::{Error, Result};

/// Weighting convention for the diffusion embedding.
///
/// `LaplacianLiteral` weights eigenvector coordinates by `lambda_i^t` with
/// `lambda_i` the eigenvalues of the normalized Laplacian. `DiffusionOperator`
/// uses `(1 - lambda_i)^t`, the eigenvalues of the associated diffusion
/// operator, as in classical diffusion maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenvalueConvention {
    LaplacianLiteral,
    DiffusionOperator,
}

/// Structural metric choices for lifting the graph mode.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StructuralMetric {
    Diffusion {
        t: u32,
        convention: EigenvalueConvention,
    },
    HeatKernel {
        t: f64,
    },
    Resistance,
    ShortestPath,
}

/// Feature metric choices for lifting the feature mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureMetric {
    Euclidean,
    Cosine,
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues ascending and
/// eigenvectors as orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Array2<f64>,
}

const SYMMETRY_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Runs plane rotations until the off-diagonal mass falls below
/// `1e-14 * ||M||_F`, which comfortably meets the contract of a residual
/// `||M v - lambda v|| <= 1e-8 * max(1, ||M||_F)` and orthonormality of the
/// eigenvector columns within `1e-8`.
pub fn sym_eigendecomposition(m: &Array2<f64>) -> Result<EigenDecomposition> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::SizeMismatch(format!("{}x{} matrix is not square", n, m.ncols())));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL {
                return Err(Error::NotSymmetric(SYMMETRY_TOL));
            }
        }
    }

    let mut a = m.clone();
    // Enforce exact symmetry so the sweep arithmetic sees one value per pair.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    let mut v: Array2<f64> = Array2::eye(n);
    let frob = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let off_tol = 1e-14 * frob.max(f64::MIN_POSITIVE);

    let mut converged = frob == 0.0;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= off_tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { n, sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].partial_cmp(&a[(j, j)]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)]).collect();
    let mut eigenvectors = Array2::zeros((n, n));
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            eigenvectors[(k, new)] = v[(k, old)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Combinatorial Laplacian `L = D - A`.
pub fn laplacian(g: &AttributedGraph) -> Array2<f64> {
    let n = g.n();
    let mut l = Array2::zeros((n, n));
    for &(u, v) in g.edges() {
        l[(u, v)] = -1.0;
        l[(v, u)] = -1.0;
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
    }
    l
}

/// Normalized Laplacian `D^{-1/2} L D^{-1/2}`; rows and columns of isolated
/// nodes are zero (0/0 degree terms are defined as 0).
pub fn normalized_laplacian(g: &AttributedGraph) -> Array2<f64> {
    let n = g.n();
    let deg = g.degrees();
    let inv_sqrt: Vec<f64> = deg
        .iter()
        .map(|&d| if d > 0 { 1.0 / (d as f64).sqrt() } else { 0.0 })
        .collect();
    let mut l = Array2::zeros((n, n));
    for i in 0..n {
        if deg[i] > 0 {
            l[(i, i)] = 1.0;
        }
    }
    for &(u, v) in g.edges() {
        let w = -inv_sqrt[u] * inv_sqrt[v];
        l[(u, v)] = w;
        l[(v, u)] = w;
    }
    l
}

fn require_connected(g: &AttributedGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

fn diffusion_weight(lambda: f64, t: u32, convention: EigenvalueConvention) -> f64 {
    match convention {
        EigenvalueConvention::LaplacianLiteral => lambda.powi(t as i32),
        EigenvalueConvention::DiffusionOperator => (1.0 - lambda).powi(t as i32),
    }
}

/// Diffusion distance computed from an existing normalized-Laplacian
/// eigendecomposition. All `n` eigenpairs enter the embedding.
pub fn diffusion_from_eigen(
    eig: &EigenDecomposition,
    t: u32,
    convention: EigenvalueConvention,
) -> DistanceMatrix {
    let n = eig.eigenvalues.len();
    let weights_sq: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let w = diffusion_weight(l, t, convention);
            w * w
        })
        .collect();
    let v = &eig.eigenvectors;
    DistanceMatrix::from_pairwise(n, |x, y| {
        (0..n)
            .map(|i| {
                let d = v[(x, i)] - v[(y, i)];
                weights_sq[i] * d * d
            })
            .sum::<f64>()
            .sqrt()
    })
}

/// Diffusion distance over a connected graph: the Euclidean distance between
/// spectral embeddings with coordinates weighted per the chosen convention.
pub fn diffusion_distance(
    g: &AttributedGraph,
    t: u32,
    convention: EigenvalueConvention,
) -> Result<DistanceMatrix> {
    require_connected(g)?;
    let eig = sym_eigendecomposition(&normalized_laplacian(g))?;
    Ok(diffusion_from_eigen(&eig, t, convention))
}

/// Heat-kernel distance from an existing normalized-Laplacian
/// eigendecomposition: the metric induced by the kernel
/// `h_t(u, v) = sum_i exp(-lambda_i t) psi_i(u) psi_i(v)`.
pub fn heat_kernel_from_eigen(eig: &EigenDecomposition, t: f64) -> DistanceMatrix {
    let n = eig.eigenvalues.len();
    let decay: Vec<f64> = eig.eigenvalues.iter().map(|&l| (-l * t).exp()).collect();
    let v = &eig.eigenvectors;
    let kernel = |x: usize, y: usize| -> f64 {
        (0..n).map(|i| decay[i] * v[(x, i)] * v[(y, i)]).sum()
    };
    DistanceMatrix::from_pairwise(n, |x, y| {
        (kernel(x, x) + kernel(y, y) - 2.0 * kernel(x, y)).max(0.0).sqrt()
    })
}

/// Heat-kernel distance over a connected graph.
///
/// The kernel itself is a similarity (`h_t(u, u) != 0`); the returned matrix
/// is the induced metric `sqrt(h_t(u,u) + h_t(v,v) - 2 h_t(u,v))`.
pub fn heat_kernel_distance(g: &AttributedGraph, t: f64) -> Result<DistanceMatrix> {
    require_connected(g)?;
    let eig = sym_eigendecomposition(&normalized_laplacian(g))?;
    Ok(heat_kernel_from_eigen(&eig, t))
}

/// Effective resistance between all node pairs of a connected graph, via the
/// spectral Moore-Penrose pseudoinverse of the combinatorial Laplacian.
pub fn resistance_distance(g: &AttributedGraph) -> Result<DistanceMatrix> {
    require_connected(g)?;
    let n = g.n();
    let eig = sym_eigendecomposition(&laplacian(g))?;
    let lambda_max = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let cutoff = 1e-10 * lambda_max.max(1.0);
    let v = &eig.eigenvectors;
    // Pseudoinverse L+ = V diag(1/lambda) V^T over the nonzero spectrum.
    let mut scaled = v.clone();
    for i in 0..n {
        let l = eig.eigenvalues[i];
        let inv = if l > cutoff { 1.0 / l } else { 0.0 };
        scaled.column_mut(i).mapv_inplace(|x| x * inv);
    }
    let pinv = scaled.dot(&v.t());
    Ok(DistanceMatrix::from_pairwise(n, |u, w| {
        pinv[(u, u)] + pinv[(w, w)] - 2.0 * pinv[(u, w)]
    }))
}

/// Breadth-first shortest-path distances (edge counts) of a connected graph.
pub fn shortest_path_distance(g: &AttributedGraph) -> Result<DistanceMatrix> {
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut values = Array2::zeros((n, n));
    for source in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
        for (v, &d) in dist.iter().enumerate() {
            values[(source, v)] = d as f64;
        }
    }
    DistanceMatrix::new(values)
}

/// Dispatch a structural metric over a connected graph.
pub fn structural_distance(g: &AttributedGraph, metric: &StructuralMetric) -> Result<DistanceMatrix> {
    match *metric {
        StructuralMetric::Diffusion { t, convention } => diffusion_distance(g, t, convention),
        StructuralMetric::HeatKernel { t } => heat_kernel_distance(g, t),
        StructuralMetric::Resistance => resistance_distance(g),
        StructuralMetric::ShortestPath => shortest_path_distance(g),
    }
}

/// Pairwise feature distances.
///
/// Cosine distance defines the zero-vector cases as 0 when both rows are zero
/// and 1 when exactly one is; output is clamped to `[0, 2]`.
pub fn feature_distance(features: &Array2<f64>, metric: FeatureMetric) -> DistanceMatrix {
    let n = features.nrows();
    match metric {
        FeatureMetric::Euclidean => DistanceMatrix::from_pairwise(n, |x, y| {
            let rx = features.row(x);
            let ry = features.row(y);
            rx.iter()
                .zip(ry.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        }),
        FeatureMetric::Cosine => {
            let norms: Array1<f64> = features
                .rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x * x).sum::<f64>().sqrt())
                .collect();
            DistanceMatrix::from_pairwise(n, |x, y| {
                let (nx, ny) = (norms[x], norms[y]);
                let d = if nx == 0.0 && ny == 0.0 {
                    0.0
                } else if nx == 0.0 || ny == 0.0 {
                    1.0
                } else {
                    let dot: f64 = features
                        .row(x)
                        .iter()
                        .zip(features.row(y).iter())
                        .map(|(a, b)| a * b)
                        .sum();
                    1.0 - dot / (nx * ny)
                };
                d.clamp(0.0, 2.0)
            })
        }
    }
}

/// Scale a distance matrix to unit diameter; degenerate zero-diameter spaces
/// are left unchanged.
pub fn normalize_diameter(d: &DistanceMatrix) -> DistanceMatrix {
    let diam = d.diameter();
    if diam > 0.0 {
        DistanceMatrix::new(d.values() / diam).expect("scaling preserves matrix invariants")
    } else {
        d.clone()
    }
}
