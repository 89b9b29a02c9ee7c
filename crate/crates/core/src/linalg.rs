//! Exact integer linear algebra: Smith normal form, linear system solving
//! over Z and modulo m, kernels and rank. Matrices stay small (rows indexed
//! by irreducible places, columns by subgroup generators), so fraction-free
//! i128 arithmetic is plenty.

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &x)| a * x).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// U * A * V = D with U, V unimodular and D diagonal, each diagonal entry
/// dividing the next.
pub struct SmithForm {
    pub u: IntMat,
    pub v: IntMat,
    pub d: IntMat,
    pub rank: usize,
}

/// Smith normal form by the classical pivot-and-reduce loop.
pub fn smith_form(a: &IntMat) -> SmithForm {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);

    for k in 0..n {
        loop {
            // Find the minimal nonzero entry in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..d.rows {
                for j in k..d.cols {
                    let val = d[(i, j)].abs();
                    if val != 0 && pivot.is_none_or(|(pi, pj)| val < d[(pi, pj)].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Trailing block is zero: done.
                return finish(u, v, d, k);
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            if d[(k, k)] < 0 {
                d.negate_row(k);
                u.negate_row(k);
            }
            let piv = d[(k, k)];

            let mut clean = true;
            for i in k + 1..d.rows {
                let q = div_floor(d[(i, k)], piv);
                if q != 0 {
                    d.add_row(i, k, -q);
                    u.add_row(i, k, -q);
                }
                if d[(i, k)] != 0 {
                    clean = false;
                }
            }
            for j in k + 1..d.cols {
                let q = div_floor(d[(k, j)], piv);
                if q != 0 {
                    d.add_col(j, k, -q);
                    v.add_col(j, k, -q);
                }
                if d[(k, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility sweep: pivot must divide the trailing block.
            let mut fixed = true;
            'scan: for i in k + 1..d.rows {
                for j in k + 1..d.cols {
                    if d[(i, j)] % piv != 0 {
                        d.add_row(k, i, 1);
                        u.add_row(k, i, 1);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    let rank = (0..n).take_while(|&k| d[(k, k)] != 0).count();
    SmithForm { u, v, d, rank }
}

fn finish(u: IntMat, v: IntMat, d: IntMat, rank: usize) -> SmithForm {
    SmithForm { u, v, d, rank }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Rank of an integer matrix (rank over Q).
pub fn rank(a: &IntMat) -> usize {
    if a.rows == 0 || a.cols == 0 {
        return 0;
    }
    smith_form(a).rank
}

/// All integer solutions of A x = b: a particular solution plus a basis of
/// the kernel lattice. `None` when the system has no integer solution.
pub fn solve(a: &IntMat, b: &[i128]) -> Option<(Vec<i128>, Vec<Vec<i128>>)> {
    assert_eq!(a.rows, b.len(), "dimension mismatch");
    let sf = smith_form(a);
    // D y = U b with x = V y.
    let ub = sf.u.mul_vec(b);
    let mut y = vec![0i128; a.cols];
    for i in 0..a.rows {
        let di = if i < a.cols { sf.d[(i, i)] } else { 0 };
        if di == 0 {
            if ub[i] != 0 {
                return None;
            }
        } else {
            if ub[i] % di != 0 {
                return None;
            }
            y[i] = ub[i] / di;
        }
    }
    let particular = sf.v.mul_vec(&y);
    let kernel = (sf.rank..a.cols)
        .map(|j| (0..a.cols).map(|i| sf.v[(i, j)]).collect())
        .collect();
    Some((particular, kernel))
}

/// Solves A x = b (mod m): returns any solution as integers in [0, m).
pub fn solve_mod(a: &IntMat, b: &[i128], m: i128) -> Option<Vec<i128>> {
    assert!(m > 0);
    // Lift to an integer system by adjoining m * I columns.
    let mut ext = IntMat::zero(a.rows, a.cols + a.rows);
    for i in 0..a.rows {
        for j in 0..a.cols {
            ext[(i, j)] = a[(i, j)];
        }
        ext[(i, a.cols + i)] = m;
    }
    let (part, _) = solve(&ext, b)?;
    Some(part[..a.cols].iter().map(|&x| x.rem_euclid(m)).collect())
}

/// Basis of { x : A x = 0 (mod m) } as integer vectors (a lattice basis of
/// the preimage, including m * e_i generators).
pub fn kernel_mod(a: &IntMat, m: i128) -> Vec<Vec<i128>> {
    assert!(m > 0);
    let mut ext = IntMat::zero(a.rows, a.cols + a.rows);
    for i in 0..a.rows {
        for j in 0..a.cols {
            ext[(i, j)] = a[(i, j)];
        }
        ext[(i, a.cols + i)] = m;
    }
    let sf = smith_form(&ext);
    let mut basis: Vec<Vec<i128>> = (sf.rank..ext.cols)
        .map(|j| (0..a.cols).map(|i| sf.v[(i, j)]).collect())
        .collect();
    // The kernel of the lifted system projects onto the mod-m kernel; add the
    // trivial m-multiples so the projection is a full-rank sublattice.
    for i in 0..a.cols {
        let mut v = vec![0i128; a.cols];
        v[i] = m;
        basis.push(v);
    }
    basis.retain(|v| v.iter().any(|&x| x != 0));
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMat) {
        let sf = smith_form(a);
        let uav = sf.u.mul(a).mul(&sf.v);
        assert_eq!(uav, sf.d);
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..sf.d.rows {
            for j in 0..sf.d.cols {
                if i != j {
                    assert_eq!(sf.d[(i, j)], 0);
                }
            }
        }
        let n = sf.d.rows.min(sf.d.cols);
        for k in 0..n {
            assert!(sf.d[(k, k)] >= 0);
            if k + 1 < n && sf.d[(k + 1, k + 1)] != 0 {
                assert!(sf.d[(k, k)] != 0);
                assert_eq!(sf.d[(k + 1, k + 1)] % sf.d[(k, k)], 0);
            }
        }
    }

    #[test]
    fn smith_reference_matrix() {
        // Classical example with invariant factors 1, 3, 21.
        let a = IntMat::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        check_smith(&a);
        let sf = smith_form(&a);
        assert_eq!(sf.d[(0, 0)], 1);
        assert_eq!(sf.d[(1, 1)], 3);
        assert_eq!(sf.d[(2, 2)], 21);
        assert_eq!(sf.d[(3, 3)], 0);
        assert_eq!(sf.rank, 3);
    }

    #[test]
    fn smith_random_shapes() {
        let cases = [
            IntMat::from_rows(&[vec![2, 4, 4]]),
            IntMat::from_rows(&[vec![1], vec![2], vec![3]]),
            IntMat::from_rows(&[vec![0, 0], vec![0, 0]]),
            IntMat::from_rows(&[vec![3, 1], vec![-1, 2], vec![7, 0]]),
        ];
        for a in &cases {
            check_smith(a);
        }
    }

    #[test]
    fn solve_integer_system() {
        // x + 2y = 5, 3x + 4y = 11 has the unique solution (1, 2).
        let a = IntMat::from_rows(&[vec![1, 2], vec![3, 4]]);
        let (x, kernel) = solve(&a, &[5, 11]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![5, 11]);
        assert!(kernel.is_empty());
        assert_eq!(x, vec![1, 2]);
    }

    #[test]
    fn solve_detects_unsolvable() {
        // 2x = 1 has no integer solution.
        let a = IntMat::from_rows(&[vec![2]]);
        assert!(solve(&a, &[1]).is_none());
        // Inconsistent rows.
        let a = IntMat::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(solve(&a, &[0, 1]).is_none());
    }

    #[test]
    fn solve_with_kernel() {
        // x + y + z = 3: kernel rank 2; check particular + kernel vectors.
        let a = IntMat::from_rows(&[vec![1, 1, 1]]);
        let (x, kernel) = solve(&a, &[3]).unwrap();
        assert_eq!(x.iter().sum::<i128>(), 3);
        assert_eq!(kernel.len(), 2);
        for k in &kernel {
            assert_eq!(k.iter().sum::<i128>(), 0);
            assert!(k.iter().any(|&v| v != 0));
        }
    }

    #[test]
    fn solve_against_brute_force_oracle() {
        // Small systems: compare solvability with exhaustive search over a box.
        let mats = [
            IntMat::from_rows(&[vec![2, 3], vec![1, -1]]),
            IntMat::from_rows(&[vec![4, 6]]),
            IntMat::from_rows(&[vec![2, 0], vec![0, 3], vec![1, 1]]),
        ];
        let rhss: Vec<Vec<i128>> = vec![vec![7, 1], vec![10], vec![4, 9, 5]];
        for (a, b) in mats.iter().zip(&rhss) {
            let brute = {
                let mut found = None;
                'outer: for x in -12i128..=12 {
                    for y in -12i128..=12 {
                        if a.mul_vec(&[x, y]) == *b {
                            found = Some(vec![x, y]);
                            break 'outer;
                        }
                    }
                }
                found
            };
            let got = solve(a, b);
            match (brute, got) {
                (Some(_), Some((x, _))) => assert_eq!(a.mul_vec(&x), *b),
                (None, None) => {}
                // Smith solving sees solutions outside the brute box.
                (None, Some((x, _))) => {
                    assert_eq!(a.mul_vec(&x), *b);
                    assert!(x.iter().any(|&v| v.abs() > 12));
                }
                (Some(x), None) => panic!("missed solution {x:?}"),
            }
        }
    }

    #[test]
    fn modular_solver() {
        // 2x = 2 (mod 4) has solutions x = 1, 3.
        let a = IntMat::from_rows(&[vec![2]]);
        let x = solve_mod(&a, &[2], 4).unwrap();
        assert_eq!((2 * x[0]).rem_euclid(4), 2);
        // 2x = 1 (mod 4) has none.
        assert!(solve_mod(&a, &[1], 4).is_none());
    }

    #[test]
    fn kernel_mod_members_annihilate() {
        let a = IntMat::from_rows(&[vec![2, 1]]);
        let basis = kernel_mod(&a, 4);
        for v in &basis {
            let prod = a.mul_vec(v);
            assert!(prod.iter().all(|&x| x.rem_euclid(4) == 0), "{v:?}");
        }
    }
}
