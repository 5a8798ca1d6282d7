//! Ext¹ between all catalog indecomposables, with the functoriality matrices
//! along hom-space basis elements.

use serde::{Deserialize, Serialize};

use super::{connecting_map, realize_cocycle, ExtError, ExtGroup, Presentation, ShortExactSequence};
use crate::algebra::{Algebra, Catalog, Hom, HomSpace, Module};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtTable {
    catalog: Catalog,
    presentations: Vec<Presentation>,
    /// `groups[x][y] = Ext¹(C_x, C_y)`.
    groups: Vec<Vec<ExtGroup>>,
    /// `homs[a][b] = Hom(C_a, C_b)`.
    homs: Vec<Vec<HomSpace>>,
    /// `push[i][j][k][b]`: `Ext¹(i, j) -> Ext¹(i, k)` along `homs[j][k]` basis `b`.
    push: Vec<Vec<Vec<Vec<Matrix>>>>,
    /// `pull[i][j][l][b]`: `Ext¹(i, j) -> Ext¹(l, j)` along `homs[l][i]` basis `b`.
    pull: Vec<Vec<Vec<Vec<Matrix>>>>,
}

/// A direct sum of catalog modules with its structure maps.
#[derive(Debug, Clone)]
pub struct SumObject {
    pub summands: Vec<usize>,
    pub module: Module,
    pub inclusions: Vec<Hom>,
    pub projections: Vec<Hom>,
}

/// One component of the class of a sequence whose end terms are identified
/// with sums of catalog modules: the part in `Ext¹(C_right, C_left)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub right: usize,
    pub left: usize,
    pub coords: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub x: usize,
    pub y: usize,
    pub dim: usize,
    /// Catalog indices of the middle term's summands, one list per basis class.
    pub middles: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTableExport {
    pub labels: Vec<String>,
    pub dims: Vec<Vec<usize>>,
    pub nonzero: Vec<ExtEntry>,
}

impl ExtTable {
    pub fn new(alg: &Algebra, catalog: Catalog) -> ExtTable {
        let n = catalog.len();
        let mods = &catalog.modules;
        let presentations: Vec<Presentation> = mods.iter().map(|m| Presentation::minimal(alg, m)).collect();
        let groups: Vec<Vec<ExtGroup>> = (0..n)
            .map(|x| (0..n).map(|y| ExtGroup::with_presentation(alg, presentations[x].clone(), &mods[y])).collect())
            .collect();
        let homs: Vec<Vec<HomSpace>> =
            (0..n).map(|a| (0..n).map(|b| alg.hom_space(&mods[a], &mods[b])).collect()).collect();
        let push = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| {
                                homs[j][k].basis().iter().map(|f| groups[i][j].pushout_matrix(f, &groups[i][k])).collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        // Connecting maps Ω_l -> Ω_i along Hom(C_l, C_i) are shared by every j.
        let conn: Vec<Vec<Vec<Hom>>> = (0..n)
            .map(|l| {
                (0..n)
                    .map(|i| {
                        homs[l][i]
                            .basis()
                            .iter()
                            .map(|g| {
                                connecting_map(alg, &presentations[l], &presentations[i].sequence(), g)
                                    .expect("presentations are exact")
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let f = alg.field();
        let pull = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|l| {
                                conn[l][i]
                                    .iter()
                                    .map(|k| {
                                        let (src, dst) = (&groups[i][j], &groups[l][j]);
                                        let cols: Vec<Vec<u32>> = (0..src.dim())
                                            .map(|e| dst.coords_of(&src.cocycle(&super::unit(src.dim(), e)).after(k)))
                                            .collect();
                                        Matrix::from_col_vecs(f, dst.dim(), &cols)
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        ExtTable { catalog, presentations, groups, homs, push, pull }
    }

    /// Restores catalog lookups after deserialization.
    pub fn reindex(&mut self) {
        self.catalog.reindex();
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    pub fn module(&self, i: usize) -> &Module {
        &self.catalog.modules[i]
    }

    pub fn presentation(&self, i: usize) -> &Presentation {
        &self.presentations[i]
    }

    pub fn group(&self, x: usize, y: usize) -> &ExtGroup {
        &self.groups[x][y]
    }

    pub fn dim(&self, x: usize, y: usize) -> usize {
        self.groups[x][y].dim()
    }

    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.groups.iter().map(|row| row.iter().map(ExtGroup::dim).collect()).collect()
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomSpace {
        &self.homs[a][b]
    }

    /// Matrices of `Ext¹(C_i, f)` for the basis of `Hom(C_j, C_k)`.
    pub fn push(&self, i: usize, j: usize, k: usize) -> &[Matrix] {
        &self.push[i][j][k]
    }

    /// Matrices of `Ext¹(g, C_j)` for the basis of `Hom(C_l, C_i)`.
    pub fn pull(&self, i: usize, j: usize, l: usize) -> &[Matrix] {
        &self.pull[i][j][l]
    }

    pub fn sum_object(&self, alg: &Algebra, summands: &[usize]) -> SumObject {
        let parts: Vec<&Module> = summands.iter().map(|&s| self.module(s)).collect();
        let d = alg.direct_sum(&parts);
        SumObject { summands: summands.to_vec(), module: d.module, inclusions: d.inclusions, projections: d.projections }
    }

    /// Components of the class of `s`, after matching both end terms with the catalog.
    pub fn components(&self, alg: &Algebra, s: &ShortExactSequence) -> Result<Vec<Component>, ExtError> {
        let right = self.catalog.identify(alg, &s.right)?;
        let left = self.catalog.identify(alg, &s.left)?;
        let mut out = Vec::new();
        for (&c, inc) in right.summands.iter().zip(&right.inclusions) {
            if left.summands.iter().all(|&a| self.dim(c, a) == 0) {
                continue;
            }
            let k = connecting_map(alg, &self.presentations[c], s, inc)?;
            for (&a, proj) in left.summands.iter().zip(&left.projections) {
                let g = &self.groups[c][a];
                if g.dim() > 0 {
                    out.push(Component { right: c, left: a, coords: g.coords_of(&proj.after(&k)) });
                }
            }
        }
        Ok(out)
    }

    /// Whether every component of the class of `s` lies in the given table.
    pub fn class_in(&self, alg: &Algebra, s: &ShortExactSequence, table: &[Vec<Subspace>]) -> Result<bool, ExtError> {
        Ok(self.components(alg, s)?.iter().all(|c| table[c.right][c.left].contains(&c.coords)))
    }

    /// Realizes the extension of `⊕ C_right[l]` by `⊕ C_left[k]` whose
    /// component in `Ext¹(C_right[l], C_left[k])` is `coords[l][k]`.
    pub fn realize_components(
        &self,
        alg: &Algebra,
        right: &[usize],
        left: &[usize],
        coords: &[Vec<Vec<u32>>],
    ) -> ShortExactSequence {
        let pres: Vec<&Presentation> = right.iter().map(|&c| &self.presentations[c]).collect();
        let pres = Presentation::direct_sum(alg, &pres);
        let a = self.sum_object(alg, left);
        let syz: Vec<&Module> = right.iter().map(|&c| &self.presentations[c].syzygy).collect();
        let syz = alg.direct_sum(&syz);
        let mut u = Hom::zero(&pres.syzygy, &a.module);
        for (l, &c) in right.iter().enumerate() {
            for (k, &t) in left.iter().enumerate() {
                let g = &self.groups[c][t];
                if g.dim() == 0 || coords[l][k].iter().all(|&x| x == 0) {
                    continue;
                }
                u = u.add(&a.inclusions[k].after(&g.cocycle(&coords[l][k])).after(&syz.projections[l]));
            }
        }
        let mut s = realize_cocycle(alg, &pres, &a.module, &u);
        s.right = pres.module;
        s
    }

    pub fn export(&self, alg: &Algebra) -> ExtTableExport {
        let n = self.len();
        let mut nonzero = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let g = &self.groups[x][y];
                if g.dim() == 0 {
                    continue;
                }
                let middles = (0..g.dim())
                    .map(|k| {
                        let s = g.realize(alg, &super::unit(g.dim(), k));
                        let mut ids = self.catalog.identify(alg, &s.mid).map(|i| i.summands).unwrap_or_default();
                        ids.sort_unstable();
                        ids
                    })
                    .collect();
                nonzero.push(ExtEntry { x, y, dim: g.dim(), middles });
            }
        }
        ExtTableExport { labels: self.catalog.labels.clone(), dims: self.dims(), nonzero }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn a2_table() -> (Algebra, ExtTable) {
        let alg = Algebra::linear(Field::new(2).unwrap(), 2).unwrap();
        let cat = Catalog::enumerate(&alg, 2, 1 << 20).unwrap();
        let t = ExtTable::new(&alg, cat);
        (alg, t)
    }

    #[test]
    fn a2_has_one_nonzero_group() {
        let (alg, t) = a2_table();
        let e = t.export(&alg);
        assert_eq!(e.nonzero.len(), 1);
        let entry = &e.nonzero[0];
        assert_eq!(entry.dim, 1);
        assert!(t.catalog().projective[entry.middles[0][0]]);
    }

    #[test]
    fn components_of_realized_sum() {
        let (alg, t) = a2_table();
        let e = &t.export(&alg).nonzero[0];
        let (x, y) = (e.x, e.y);
        let coords = vec![vec![vec![1], vec![0]], vec![vec![0], vec![1]]];
        let s = t.realize_components(&alg, &[x, x], &[y, y], &coords);
        s.validate(&alg).unwrap();
        let comps = t.components(&alg, &s).unwrap();
        assert_eq!(comps.len(), 4);
        let nonzero = comps.iter().filter(|c| c.coords != vec![0]).count();
        assert_eq!(nonzero, 2);
    }
}
