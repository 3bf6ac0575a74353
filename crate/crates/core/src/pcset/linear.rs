//! Nonempty affine subspaces of `Kⁿ` cut out by rational equations.

use crate::exact::{MPoly, MonomialOrder, Rat};

/// Rows `[a₁ … aₙ | c]` meaning `a·x + c = 0`, kept in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    n: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form of an augmented system, or `None` when inconsistent.
pub(super) fn rref(n: usize, mut rows: Vec<Vec<Rat>>) -> Option<(Vec<Vec<Rat>>, Vec<usize>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, pr);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..=n {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= &d;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some((rows, pivots))
}

impl AffineSpace {
    pub fn whole(n: usize) -> AffineSpace {
        AffineSpace { n, rows: Vec::new(), pivots: Vec::new() }
    }

    /// `None` when some polynomial has degree above one; `Some(None)` when the system is inconsistent.
    pub fn from_polys(n: usize, polys: &[MPoly<Rat>]) -> Option<Option<AffineSpace>> {
        let mut rows = Vec::new();
        for p in polys {
            if p.total_degree().unwrap_or(0) > 1 {
                return None;
            }
            let mut row = vec![Rat::zero(); n + 1];
            for (m, c) in p.terms() {
                match m.iter().position(|&e| e == 1) {
                    Some(i) => row[i] = c.clone(),
                    None => row[n] = c.clone(),
                }
            }
            rows.push(row);
        }
        Some(Self::from_rows(n, rows))
    }

    fn from_rows(n: usize, rows: Vec<Vec<Rat>>) -> Option<AffineSpace> {
        rref(n, rows).map(|(rows, pivots)| AffineSpace { n, rows, pivots })
    }

    pub fn point(coords: &[Rat]) -> AffineSpace {
        let n = coords.len();
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![Rat::zero(); n + 1];
                row[i] = Rat::one();
                row[n] = -&coords[i];
                row
            })
            .collect();
        Self::from_rows(n, rows).expect("a point is consistent")
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.rows.len()
    }

    pub fn intersect(&self, o: &AffineSpace) -> Option<AffineSpace> {
        let rows = self.rows.iter().chain(&o.rows).cloned().collect();
        Self::from_rows(self.n, rows)
    }

    /// Whether `o ⊆ self`: every equation of `self` is a combination of those of `o`.
    pub fn contains_space(&self, o: &AffineSpace) -> bool {
        self.rows.iter().all(|row| {
            let mut r = row.clone();
            for (orow, &pc) in o.rows.iter().zip(&o.pivots) {
                if !r[pc].is_zero() {
                    let f = r[pc].clone();
                    for j in 0..=self.n {
                        let d = &f * &orow[j];
                        r[j] -= &d;
                    }
                }
            }
            r.iter().all(Rat::is_zero)
        })
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        self.rows.iter().all(|row| {
            let v: Rat = row[..self.n].iter().zip(x).map(|(a, b)| a * b).sum();
            (&v + &row[self.n]).is_zero()
        })
    }

    /// `self × o` in the variables `x₁..xₙ, xₙ₊₁..xₙ₊ₘ`.
    pub fn product(&self, o: &AffineSpace) -> AffineSpace {
        let n = self.n + o.n;
        let mut rows = Vec::new();
        for row in &self.rows {
            let mut r = row[..self.n].to_vec();
            r.extend(vec![Rat::zero(); o.n]);
            r.push(row[self.n].clone());
            rows.push(r);
        }
        for row in &o.rows {
            let mut r = vec![Rat::zero(); self.n];
            r.extend_from_slice(&row[..=o.n]);
            rows.push(r);
        }
        Self::from_rows(n, rows).expect("product of nonempty spaces")
    }

    pub fn to_polys(&self, order: MonomialOrder) -> Vec<MPoly<Rat>> {
        self.rows
            .iter()
            .map(|row| {
                let mut terms = Vec::new();
                for (i, c) in row[..self.n].iter().enumerate() {
                    let mut m = vec![0; self.n];
                    m[i] = 1;
                    terms.push((m, c.clone()));
                }
                terms.push((vec![0; self.n], row[self.n].clone()));
                MPoly::from_terms(self.n, order, terms)
            })
            .collect()
    }

    /// Points obtained by giving each free coordinate every value in `grid`.
    pub fn sample(&self, grid: &[Rat]) -> Vec<Vec<Rat>> {
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; free.len()];
        loop {
            let mut x = vec![Rat::zero(); self.n];
            for (k, &c) in free.iter().enumerate() {
                x[c] = grid[idx[k]].clone();
            }
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                let mut v = -&row[self.n];
                for &c in &free {
                    v -= &(&row[c] * &x[c]);
                }
                x[pc] = v;
            }
            out.push(x);
            let mut k = 0;
            loop {
                if k == free.len() {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < grid.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_rat_poly;

    fn space(n: usize, gens: &[&str]) -> Option<AffineSpace> {
        let polys: Vec<_> = gens.iter().map(|g| parse_rat_poly(g, Some(n)).unwrap()).collect();
        AffineSpace::from_polys(n, &polys).unwrap()
    }

    #[test]
    fn basics() {
        let l = space(2, &["x1 - x2"]).unwrap();
        assert_eq!(l.dim(), 1);
        assert!(space(2, &["x1", "x1 - 1"]).is_none());
        let origin = AffineSpace::point(&[Rat::zero(), Rat::zero()]);
        assert!(l.contains_space(&origin));
        assert!(!origin.contains_space(&l));
        let m = space(2, &["2*x1 - 2*x2"]).unwrap();
        assert_eq!(l, m);
        assert_eq!(l.intersect(&space(2, &["x1 + x2 - 2"]).unwrap()).unwrap(), AffineSpace::point(&[Rat::one(), Rat::one()]));
        assert!(AffineSpace::from_polys(2, &[parse_rat_poly("x1^2", Some(2)).unwrap()]).is_none());
    }

    #[test]
    fn samples_lie_on_space() {
        let s = space(3, &["x1 + 2*x2 - x3 + 1"]).unwrap();
        let grid: Vec<Rat> = (-1..=1).map(Rat::from_int).collect();
        let pts = s.sample(&grid);
        assert_eq!(pts.len(), 9);
        assert!(pts.iter().all(|p| s.contains_point(p)));
    }

    #[test]
    fn product_dims() {
        let a = space(2, &["x2"]).unwrap();
        let b = AffineSpace::point(&[Rat::zero()]);
        let c = a.product(&b);
        assert_eq!((c.ambient(), c.dim()), (3, 1));
        assert_eq!(c.to_polys(MonomialOrder::GRevLex).len(), 2);
    }
}
