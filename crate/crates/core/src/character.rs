//! Character tables as external inputs, and the identities tying them to the
//! class algebra.
//!
//! Tables are exact rationals, one row per irreducible character, columns in
//! the group's canonical class order. Intended fixtures are groups with
//! rational character tables (S3, S4, D4, Q8, elementary abelian 2-groups),
//! where every character is self-dual.

use crate::dset::{class_product, Check};
use crate::error::{Error, Result};
use crate::group::{ConjugacyData, FiniteGroup};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i64>;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    /// chi[r][c] = value of character r on class c.
    pub chi: Vec<Vec<Q>>,
    /// class sizes, as declared in the input file.
    pub w: Vec<usize>,
}

fn parse_rational(tok: &str) -> Result<Q> {
    if let Some((p, q)) = tok.split_once('/') {
        let num: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad rational `{tok}`")))?;
        let den: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad rational `{tok}`")))?;
        if den == 0 {
            return Err(Error::parse("zero denominator"));
        }
        Ok(Ratio::new(num, den))
    } else {
        let num: i64 = tok
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad rational `{tok}`")))?;
        Ok(Ratio::from_integer(num))
    }
}

impl CharacterTable {
    /// Parses the text format: `classes: <w_0> <w_1> ...` then one row of
    /// rationals per character.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("empty character table"))?;
        let sizes = header
            .strip_prefix("classes:")
            .ok_or_else(|| Error::parse("expected `classes:` header"))?;
        let w: Vec<usize> = sizes
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad class size `{t}`")))
            })
            .collect::<Result<_>>()?;
        let mut chi = Vec::new();
        for line in lines {
            let row: Vec<Q> = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<_>>()?;
            if row.len() != w.len() {
                return Err(Error::parse(format!(
                    "character row has {} entries, expected {}",
                    row.len(),
                    w.len()
                )));
            }
            chi.push(row);
        }
        Ok(CharacterTable { chi, w })
    }

    pub fn num_classes(&self) -> usize {
        self.w.len()
    }

    /// Validates the table against a group: square, class sizes match,
    /// row 0 trivial, dimensions positive, and row orthogonality
    /// `sum_c w_c chi_r(c) chi_s(c*) = |G| δ_{rs}`.
    pub fn validate(&self, g: &FiniteGroup, cd: &ConjugacyData) -> Result<()> {
        let nc = cd.num_classes();
        if self.w.len() != nc || self.chi.len() != nc {
            return Err(Error::validation(format!(
                "table is {}x{}, group has {} classes",
                self.chi.len(),
                self.w.len(),
                nc
            )));
        }
        if self.w != cd.w {
            return Err(Error::validation(
                "declared class sizes do not match the group's class order",
            ));
        }
        if self.chi[0].iter().any(|x| *x != Q::one()) {
            return Err(Error::validation("row 0 is not the trivial character"));
        }
        for (r, row) in self.chi.iter().enumerate() {
            if row[0] <= Q::zero() || !row[0].is_integer() {
                return Err(Error::validation(format!(
                    "character {r} has non-positive or non-integer dimension"
                )));
            }
        }
        let order = Q::from_integer(g.order() as i64);
        for r in 0..nc {
            for s in 0..nc {
                let mut acc = Q::zero();
                for c in 0..nc {
                    acc += Q::from_integer(self.w[c] as i64) * self.chi[r][c]
                        * self.chi[s][cd.star[c]];
                }
                let expect = if r == s { order } else { Q::zero() };
                if acc != expect {
                    return Err(Error::validation(format!(
                        "orthogonality fails for rows {r},{s}: {acc}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Index of the dual character of row `r` (`chi_{r*}(c) = chi_r(c*)`).
    pub fn dual(&self, cd: &ConjugacyData, r: usize) -> Result<usize> {
        let nc = self.num_classes();
        let target: Vec<Q> = (0..nc).map(|c| self.chi[r][cd.star[c]]).collect();
        self.chi
            .iter()
            .position(|row| *row == target)
            .ok_or_else(|| Error::validation(format!("dual of character {r} missing from table")))
    }

    /// `A_{i_1..i_k} = (1/|G|) sum_c w_c chi_{i_1}(c) ... chi_{i_k}(c)`.
    pub fn a_constant(&self, g: &FiniteGroup, rows: &[usize]) -> Q {
        let nc = self.num_classes();
        let mut acc = Q::zero();
        for c in 0..nc {
            let mut prod = Q::from_integer(self.w[c] as i64);
            for &r in rows {
                prod *= self.chi[r][c];
            }
            acc += prod;
        }
        acc / Q::from_integer(g.order() as i64)
    }
}

/// Report of the character identity suite.
#[derive(Clone, Debug)]
pub struct CharacterReport {
    pub checks: Vec<Check>,
}

impl CharacterReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Verifies, for a validated table:
///
/// (a) `chi_k(g_i) chi_k(g_j) = (n_k/|G|) * sum_l β̄_{i,j}^l chi_k(g_l)`,
/// (b) the representation-ring constants `A` are nonnegative integers and
///     satisfy symmetry, `A_{i,j} = δ_{j,i*}`, the pointwise product
///     decomposition with `α_{i,j}^k = A_{i,j,k*}`, and the split-point
///     factorization, all up to 4 indices.
pub fn character_identity_check(
    g: &FiniteGroup,
    cd: &ConjugacyData,
    table: &CharacterTable,
) -> Result<CharacterReport> {
    table.validate(g, cd)?;
    let nc = cd.num_classes();
    let order = Q::from_integer(g.order() as i64);
    let mut checks = Vec::new();

    // (a) the class-algebra identity on characters
    {
        let mut pass = true;
        let mut witness = None;
        'outer: for i in 0..nc {
            for j in 0..nc {
                let beta = class_product(g, cd, i, j);
                for k in 0..nc {
                    let nk = table.chi[k][0];
                    let mut sum = Q::zero();
                    for l in 0..nc {
                        sum += Q::from_integer(beta[l] as i64) * table.chi[k][l];
                    }
                    let lhs = table.chi[k][i] * table.chi[k][j];
                    let rhs = nk / order * sum;
                    if lhs != rhs {
                        pass = false;
                        witness = Some(format!("character {k} at classes ({i},{j})"));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(Check {
            name: "class-algebra-on-characters".into(),
            pass,
            witness,
        });
    }

    let duals: Vec<usize> = (0..nc)
        .map(|r| table.dual(cd, r))
        .collect::<Result<_>>()?;

    // (b1) A integral and nonnegative, up to 4 indices
    {
        let mut pass = true;
        let mut witness = None;
        let mut idx = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for v in &idx {
                for r in 0..nc {
                    let mut u = v.clone();
                    u.push(r);
                    next.push(u);
                }
            }
            idx = next;
            for v in &idx {
                let a = table.a_constant(g, v);
                if !a.is_integer() || a.is_negative() {
                    pass = false;
                    witness = Some(format!("A{v:?} = {a}"));
                }
            }
            if !pass {
                break;
            }
        }
        checks.push(Check {
            name: "A-integral-nonnegative".into(),
            pass,
            witness,
        });
    }

    // (b2) symmetry is built into the formula; spot-check pairs/triples anyway
    {
        let mut pass = true;
        let mut witness = None;
        for i in 0..nc {
            for j in 0..nc {
                for k in 0..nc {
                    let a = table.a_constant(g, &[i, j, k]);
                    if a != table.a_constant(g, &[k, i, j]) || a != table.a_constant(g, &[j, i, k])
                    {
                        pass = false;
                        witness = Some(format!("({i},{j},{k})"));
                    }
                }
            }
        }
        checks.push(Check {
            name: "A-symmetry".into(),
            pass,
            witness,
        });
    }

    // (b3) A_{i,j} = δ_{j,i*}
    {
        let mut pass = true;
        let mut witness = None;
        for i in 0..nc {
            for j in 0..nc {
                let a = table.a_constant(g, &[i, j]);
                let expect = if j == duals[i] { Q::one() } else { Q::zero() };
                if a != expect {
                    pass = false;
                    witness = Some(format!("A[{i},{j}] = {a}, expected {expect}"));
                }
            }
        }
        checks.push(Check {
            name: "A-pairs-dual-delta".into(),
            pass,
            witness,
        });
    }

    // (b4) pointwise product decomposition chi_i chi_j = sum_k α_{i,j}^k chi_k
    //      with α_{i,j}^k = A_{i,j,k*}
    {
        let mut pass = true;
        let mut witness = None;
        'prod: for i in 0..nc {
            for j in 0..nc {
                for c in 0..nc {
                    let mut sum = Q::zero();
                    for k in 0..nc {
                        sum += table.a_constant(g, &[i, j, duals[k]]) * table.chi[k][c];
                    }
                    if sum != table.chi[i][c] * table.chi[j][c] {
                        pass = false;
                        witness = Some(format!("product ({i},{j}) at class {c}"));
                        break 'prod;
                    }
                }
            }
        }
        checks.push(Check {
            name: "tensor-decomposition".into(),
            pass,
            witness,
        });
    }

    // (b5) factorization A_{i1..i4} = sum_j A_{i1,i2,j} A_{j*,i3,i4}
    {
        let mut pass = true;
        let mut witness = None;
        'fact: for i1 in 0..nc {
            for i2 in 0..nc {
                for i3 in 0..nc {
                    for i4 in 0..nc {
                        let a = table.a_constant(g, &[i1, i2, i3, i4]);
                        let mut sum = Q::zero();
                        for j in 0..nc {
                            sum += table.a_constant(g, &[i1, i2, j])
                                * table.a_constant(g, &[duals[j], i3, i4]);
                        }
                        if a != sum {
                            pass = false;
                            witness = Some(format!("({i1},{i2},{i3},{i4})"));
                            break 'fact;
                        }
                    }
                }
            }
        }
        checks.push(Check {
            name: "A-split-factorization".into(),
            pass,
            witness,
        });
    }

    Ok(CharacterReport { checks })
}

/// Character table of S3 in this crate's canonical class order
/// (identity, 3-cycles, transpositions).
pub fn table_s3() -> CharacterTable {
    CharacterTable {
        w: vec![1, 2, 3],
        chi: vec![
            vec![Q::one(), Q::one(), Q::one()],
            vec![Q::one(), Q::one(), -Q::one()],
            vec![Q::from_integer(2), -Q::one(), Q::zero()],
        ],
    }
}

/// Character table of Q8 in canonical class order
/// (e, central involution, then the three order-4 axes).
pub fn table_q8() -> CharacterTable {
    let o = Q::one;
    CharacterTable {
        w: vec![1, 1, 2, 2, 2],
        chi: vec![
            vec![o(), o(), o(), o(), o()],
            vec![o(), o(), -o(), o(), -o()],
            vec![o(), o(), o(), -o(), -o()],
            vec![o(), o(), -o(), -o(), o()],
            vec![
                Q::from_integer(2),
                Q::from_integer(-2),
                Q::zero(),
                Q::zero(),
                Q::zero(),
            ],
        ],
    }
}

/// Character table of D4 in canonical class order.
pub fn table_d4() -> CharacterTable {
    // same table as Q8 (the classic pair of non-isomorphic groups with equal
    // character tables), but the class order differs: (e, r^2, reflections s,
    // rotations r, reflections rs)
    table_q8()
}

/// Character table of the trivial group.
pub fn table_trivial() -> CharacterTable {
    CharacterTable {
        w: vec![1],
        chi: vec![vec![Q::one()]],
    }
}

pub fn render(table: &CharacterTable) -> String {
    let mut s = String::from("classes:");
    for w in &table.w {
        s.push(' ');
        s.push_str(&w.to_string());
    }
    s.push('\n');
    for row in &table.chi {
        let toks: Vec<String> = row.iter().map(|q| q.to_string()).collect();
        s.push_str(&toks.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy, cyclic, dihedral, quaternion8, symmetric, FiniteGroup};

    #[test]
    fn s3_table_checks() {
        let g = symmetric(3);
        let cd = conjugacy(&g);
        let rep = character_identity_check(&g, &cd, &table_s3()).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }

    #[test]
    fn q8_table_checks() {
        let g = quaternion8();
        let cd = conjugacy(&g);
        let rep = character_identity_check(&g, &cd, &table_q8()).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }

    #[test]
    fn d4_table_checks() {
        let g = dihedral(4);
        let cd = conjugacy(&g);
        let rep = character_identity_check(&g, &cd, &table_d4()).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_mul_fn("Z1", 1, |_, _| 0).unwrap();
        let cd = conjugacy(&g);
        let rep = character_identity_check(&g, &cd, &table_trivial()).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn abelian_a_pairs() {
        // abelian G: characters are homomorphisms, A_{i,j} = δ_{j,i*}
        let g = cyclic(2);
        let cd = conjugacy(&g);
        let t = CharacterTable {
            w: vec![1, 1],
            chi: vec![vec![Q::one(), Q::one()], vec![Q::one(), -Q::one()]],
        };
        let rep = character_identity_check(&g, &cd, &t).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn parse_round_trip() {
        let t = table_s3();
        let u = CharacterTable::parse(&render(&t)).unwrap();
        assert_eq!(t.chi, u.chi);
        assert_eq!(t.w, u.w);
    }

    #[test]
    fn bad_orthogonality_rejected() {
        let g = symmetric(3);
        let cd = conjugacy(&g);
        let mut t = table_s3();
        t.chi[2][1] = Q::zero();
        assert!(t.validate(&g, &cd).is_err());
    }

    #[test]
    fn elementary_abelian_two_group() {
        let g = crate::group::elementary_abelian2(2);
        let cd = conjugacy(&g);
        // rows are the four sign characters; class order is e,1,2,3 (xor group)
        let o = Q::one;
        let sign = |mask: usize, x: usize| {
            if (mask & x).count_ones() % 2 == 0 {
                o()
            } else {
                -o()
            }
        };
        let chi: Vec<Vec<Q>> = (0..4)
            .map(|mask| (0..4).map(|x| sign(mask, x)).collect())
            .collect();
        let t = CharacterTable {
            w: vec![1, 1, 1, 1],
            chi,
        };
        let rep = character_identity_check(&g, &cd, &t).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
    }
}
