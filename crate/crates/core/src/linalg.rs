//! Exact rational sparse linear algebra: rank, kernel, span membership,
//! annihilators. Everything runs over arbitrary-precision rationals;
//! elimination pivots on the least column index, ties broken by least row
//! index, so reduced bases are deterministic.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Sparse vector: entries sorted by index, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Rat)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    pub fn unit(index: usize) -> SparseVec {
        SparseVec {
            entries: vec![(index, Rat::one())],
        }
    }

    /// Build from arbitrary (index, value) pairs; repeated indices are summed.
    pub fn from_entries<I: IntoIterator<Item = (usize, Rat)>>(entries: I) -> SparseVec {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, v) in entries {
            let slot = map.entry(i).or_insert_with(Rat::zero);
            *slot += v;
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Rat {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Index and value of the first nonzero entry.
    pub fn leading(&self) -> Option<(usize, &Rat)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Rat) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`, merging sorted entry lists.
    pub fn add_scaled(&self, c: &Rat, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb * c));
                        b.next();
                    } else {
                        let v = va + &(vb * c);
                        if !v.is_zero() {
                            out.push((*ia, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => {
                    out.extend(a.map(|(i, v)| (*i, v.clone())));
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.map(|(i, v)| (*i, v * c)));
                    break;
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Rat {
        let mut acc = Rat::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((ia, va)), Some((ib, vb))) = (a.peek(), b.peek()) {
            if ia < ib {
                a.next();
            } else if ib < ia {
                b.next();
            } else {
                acc += va * vb;
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Reindex entries through `map` (a bijection on coordinates).
    pub fn permute_indices(&self, map: &[usize]) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (map[*i], v.clone())))
    }
}

/// Sparse matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> SparseMatrix {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Result<SparseMatrix> {
        for (r, row) in rows.iter().enumerate() {
            if let Some(max) = row.max_index() {
                if max >= cols {
                    return Err(Error::IndexOutOfRange {
                        row: r,
                        col: max,
                        rows: rows.len(),
                        cols,
                    });
                }
            }
        }
        Ok(SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<SparseMatrix>
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut per_row: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::IndexOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            per_row[r].push((c, v));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            data: per_row.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &SparseVec> {
        self.data.iter()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut per_row: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                per_row[c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data: per_row.into_iter().map(SparseVec::from_entries).collect(),
        }
    }

    /// Row vector times matrix: `(v^T M)`.
    pub fn row_times(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(c, &self.data[i]);
        }
        acc
    }

    pub fn rank(&self) -> usize {
        let mut span = RowSpan::new(self.cols);
        for row in &self.data {
            span.insert(row.clone());
        }
        span.rank()
    }
}

/// Incremental row-echelon span: rows keyed by pivot column, each with
/// leading coefficient 1. Inserted rows are reduced against the current
/// pivots; existing rows are never modified, so ranks are order-independent.
#[derive(Debug, Clone)]
pub struct RowSpan {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl RowSpan {
    pub fn new(ambient: usize) -> RowSpan {
        RowSpan {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduce `v` against the current echelon rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        while let Some((lead, coeff)) = v.leading() {
            match self.rows.get(&lead) {
                Some(row) => {
                    let c = -coeff.clone();
                    v = v.add_scaled(&c, row);
                }
                None => break,
            }
        }
        v
    }

    /// Insert a vector; returns the pivot column if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let reduced = self.reduce(&v);
        let (lead, coeff) = reduced.leading()?;
        let inv = Rat::one() / coeff.clone();
        let normalized = reduced.scale(&inv);
        self.rows.insert(lead, normalized);
        Some(lead)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivot_row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Echelon rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Back-substitute to the unique reduced row echelon basis.
    pub fn into_basis(self) -> SpanBasis {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut rows: Vec<SparseVec> = self.rows.into_values().collect();
        for i in (0..rows.len()).rev() {
            let pivot = pivots[i];
            let pivot_row = rows[i].clone();
            for (j, row) in rows.iter_mut().enumerate().take(i) {
                let _ = j;
                let c = row.get(pivot);
                if !c.is_zero() {
                    *row = row.add_scaled(&(-c), &pivot_row);
                }
            }
        }
        SpanBasis {
            ambient: self.ambient,
            rows,
            pivots,
        }
    }
}

/// Row-reduced basis of a subspace: rows in reduced row echelon form with
/// one pivot column per row.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn empty(ambient: usize) -> SpanBasis {
        SpanBasis {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(pivot);
            if !c.is_zero() {
                v = v.add_scaled(&(-c), row);
            }
        }
        v
    }

    fn check_ambient(&self, v: &SparseVec) -> Result<()> {
        if let Some(max) = v.max_index() {
            if max >= self.ambient {
                return Err(Error::DimensionMismatch {
                    left: max + 1,
                    right: self.ambient,
                });
            }
        }
        Ok(())
    }
}

/// Exact Gauss-Jordan over the rationals; returns the reduced basis of the
/// row space and its rank.
pub fn rref(m: &SparseMatrix) -> (SpanBasis, usize) {
    let mut span = RowSpan::new(m.cols());
    for row in m.row_iter() {
        span.insert(row.clone());
    }
    let basis = span.into_basis();
    let rank = basis.rank();
    (basis, rank)
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel(m: &SparseMatrix) -> SpanBasis {
    let (basis, _) = rref(m);
    let pivot_set: std::collections::HashSet<usize> = basis.pivots().iter().copied().collect();
    let mut span = RowSpan::new(m.cols());
    for free in 0..m.cols() {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut entries = vec![(free, Rat::one())];
        for (row, &pivot) in basis.rows().iter().zip(basis.pivots()) {
            let c = row.get(free);
            if !c.is_zero() {
                entries.push((pivot, -c));
            }
        }
        span.insert(SparseVec::from_entries(entries));
    }
    span.into_basis()
}

/// Annihilator `{w : <v, w> = 0 for all v in the span}` with respect to a
/// square pairing matrix on the ambient space.
pub fn annihilator(space: &SpanBasis, pairing: &SparseMatrix) -> Result<SpanBasis> {
    if pairing.rows() != space.ambient() || pairing.cols() != space.ambient() {
        return Err(Error::PairingShape {
            ambient: space.ambient(),
            rows: pairing.rows(),
            cols: pairing.cols(),
        });
    }
    let rows: Vec<SparseVec> = space
        .rows()
        .iter()
        .map(|v| pairing.row_times(v))
        .collect();
    let m = SparseMatrix::from_rows(space.ambient(), rows)?;
    Ok(kernel(&m))
}

/// Membership of a coordinate vector in a row-reduced span.
pub fn member(v: &SparseVec, s: &SpanBasis) -> Result<bool> {
    s.check_ambient(v)?;
    Ok(s.reduce(v).is_zero())
}
