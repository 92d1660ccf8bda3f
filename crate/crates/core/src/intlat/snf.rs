use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Which transforms to accumulate alongside the diagonal.
#[derive(Clone, Copy, Debug, Default)]
pub struct SnfTrack {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfTrack {
    pub const ALL: SnfTrack = SnfTrack {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const ROWS: SnfTrack = SnfTrack {
        u: true,
        u_inv: true,
        v: false,
        v_inv: false,
    };
    pub const COLS: SnfTrack = SnfTrack {
        u: false,
        u_inv: false,
        v: true,
        v_inv: true,
    };
}

/// Result of a Smith normal form computation: `U·A·V = D` with `D = diag(d)`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal entries `d_0 | d_1 | ...`, length `min(rows, cols)`, trailing zeros included.
    pub diag: Vec<BigInt>,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Smith {
    pub fn d_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.diag)
    }
}

type Rows = Vec<Vec<BigInt>>;

fn ident(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

fn to_matrix(rows: Rows, n: usize) -> IntMatrix {
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_rows(&rows)
}

struct Work {
    a: Rows,
    u: Option<Rows>,
    u_inv: Option<Rows>,
    v: Option<Rows>,
    v_inv: Option<Rows>,
}

/// `dst += c * src` on a pair of rows of the same table.
fn add_row_multiple(t: &mut Rows, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() || dst == src {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = t.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = t.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
}

/// `col dst += c * col src` in a row-major table.
fn add_col_multiple(t: &mut Rows, dst: usize, src: usize, c: &BigInt) {
    if c.is_zero() || dst == src {
        return;
    }
    for row in t.iter_mut() {
        if !row[src].is_zero() {
            let delta = c * &row[src];
            row[dst] += delta;
        }
    }
}

fn swap_cols(t: &mut Rows, i: usize, j: usize) {
    for row in t.iter_mut() {
        row.swap(i, j);
    }
}

impl Work {
    // row_i += c * row_p ; U gets the same row op, U^{-1} the inverse column op.
    fn row_add(&mut self, i: usize, p: usize, c: &BigInt) {
        add_row_multiple(&mut self.a, i, p, c);
        if let Some(u) = self.u.as_mut() {
            add_row_multiple(u, i, p, c);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            add_col_multiple(ui, p, i, &-c);
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            swap_cols(ui, i, j);
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    // col_j += c * col_p ; V gets the same column op, V^{-1} the inverse row op.
    fn col_add(&mut self, j: usize, p: usize, c: &BigInt) {
        add_col_multiple(&mut self.a, j, p, c);
        if let Some(v) = self.v.as_mut() {
            add_col_multiple(v, j, p, c);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            add_row_multiple(vi, p, j, &-c);
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = self.v.as_mut() {
            swap_cols(v, i, j);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap(i, j);
        }
    }
}

/// Quotient rounding to the nearest integer, so remainders stay small.
fn near_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(p);
    let twice = &r * 2;
    if p.is_positive() {
        if twice > *p {
            q + 1
        } else {
            q
        }
    } else if twice < *p {
        q + 1
    } else {
        q
    }
}

/// Smith normal form with the requested transforms.
pub fn smith(a: &IntMatrix, track: SnfTrack) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.to_rows(),
        u: track.u.then(|| ident(m)),
        u_inv: track.u_inv.then(|| ident(m)),
        v: track.v.then(|| ident(n)),
        v_inv: track.v_inv.then(|| ident(n)),
    };
    let steps = m.min(n);
    let mut rank = 0;
    for t in 0..steps {
        // global minimal pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if w.a[bi][bj].magnitude() <= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
            if let Some((bi, bj)) = best {
                if w.a[bi][bj].magnitude().is_one() {
                    break;
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let p = w.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = near_quotient(&w.a[i][t], &p);
                w.row_add(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = near_quotient(&w.a[t][j], &p);
                w.col_add(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // pivot must divide the whole trailing block
                let bad = (t + 1..m).find(|&i| {
                    w.a[i][t + 1..]
                        .iter()
                        .any(|x| !x.is_zero() && !x.is_multiple_of(&p))
                });
                match bad {
                    None => break,
                    Some(i) => {
                        w.row_add(t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            // smallest remaining entry in pivot row/column becomes the new pivot
            let mut bi = t;
            let mut bj = t;
            let mut bv = w.a[t][t].magnitude().clone();
            for i in t + 1..m {
                let x = w.a[i][t].magnitude();
                if !x.is_zero() && *x < bv {
                    bv = x.clone();
                    bi = i;
                    bj = t;
                }
            }
            for j in t + 1..n {
                let x = w.a[t][j].magnitude();
                if !x.is_zero() && *x < bv {
                    bv = x.clone();
                    bi = t;
                    bj = j;
                }
            }
            w.row_swap(t, bi);
            w.col_swap(t, bj);
        }
        if w.a[t][t].is_negative() {
            w.row_neg(t);
        }
        rank = t + 1;
    }
    let diag = (0..steps).map(|i| w.a[i][i].clone()).collect();
    Smith {
        rows: m,
        cols: n,
        diag,
        rank,
        u: w.u.map(|r| to_matrix(r, m)),
        u_inv: w.u_inv.map(|r| to_matrix(r, m)),
        v: w.v.map(|r| to_matrix(r, n)),
        v_inv: w.v_inv.map(|r| to_matrix(r, n)),
    }
}

/// Smith decomposition `(U, D, V)` with `U·A·V = D`.
pub fn snf_decompose(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(
        a,
        SnfTrack {
            u: true,
            v: true,
            ..SnfTrack::default()
        },
    );
    let d = s.d_matrix();
    (s.u.unwrap(), d, s.v.unwrap())
}

/// Nonzero invariant factors (including 1s) of the lattice spanned by the columns.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let s = smith(a, SnfTrack::default());
    s.diag.into_iter().take(s.rank).collect()
}

/// Basis of the integer kernel `{x : A x = 0}`, as columns.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(
        a,
        SnfTrack {
            v: true,
            ..SnfTrack::default()
        },
    );
    let v = s.v.unwrap();
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    v.select_columns(&idx)
}

/// A basis (as columns) of the lattice spanned by the columns of `gens`, in the ambient `Z^rows`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let rows = gens.rows();
    let s = smith(
        gens,
        SnfTrack {
            u_inv: true,
            ..SnfTrack::default()
        },
    );
    let ui = s.u_inv.unwrap();
    let cols: Vec<Vec<BigInt>> = (0..s.rank)
        .map(|i| ui.column(i).into_iter().map(|x| x * &s.diag[i]).collect())
        .collect();
    IntMatrix::from_columns(rows, &cols)
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "rhs length mismatch");
    LinearSolver::new(a).solve(b)
}

/// Precomputed factorization for repeated solves of `A x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    u: IntMatrix,
    v: IntMatrix,
    diag: Vec<BigInt>,
    rank: usize,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        let s = smith(
            a,
            SnfTrack {
                u: true,
                v: true,
                ..SnfTrack::default()
            },
        );
        LinearSolver {
            u: s.u.unwrap(),
            v: s.v.unwrap(),
            diag: s.diag,
            rank: s.rank,
            cols: a.cols(),
        }
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, c) in ub.iter().enumerate() {
            if i < self.rank {
                let (q, r) = c.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}
