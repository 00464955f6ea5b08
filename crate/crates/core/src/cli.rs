//! The deck format and the command runner behind the `gradscheme` binary.
//!
//! A deck is a line-oriented text file:
//!
//! ```text
//! # comment
//! field K = ext F3 [1,0,1]
//! group C6 = Z/6
//! algebra A over Q dim 3 basis b0,b1,b2
//! mul b1 b2 = 2 b0
//! grading Gamma on A by C6 deg b0=0 b1=2 b2=4
//! ring R = dual F3 2
//! map phi on Gamma over R = [[1,0,0],[0,0,1],[0,1,0]]
//! ```
//!
//! `mul` lines belong to the most recent `algebra`. Fields `Q`, `Fp` and
//! `Fq` (prime powers) are always available, as are group literals such as
//! `Z/6`, `Z^2` or `Z/2 + Z`. A ring can be `base K`, `dual K n`,
//! `poly K [c0,...,1]`, `groupalg K G` or `product R1 R2`; a field name
//! can be used wherever a ring is expected. Map entries `[i][j]` give the
//! coefficient of basis vector `i` in the image of basis vector `j`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::abgroups::FGAbelianGroup;
use crate::comrings::{CommRing, Tabled, TestRing};
use crate::fixtures;
use crate::galg::{build_grading, verify_grading_generic, Algebra, Grading};
use crate::points::{self, Coverage, DGroupVerdict, Functor, Matrix, Stage};
use crate::scalars::{split_top_level, Elem, Field};
use crate::weyl;
use crate::{Error, Result};

pub const ZERO6_DECK: &str = include_str!("../decks/zero6.deck");
pub const CYC3_DECK: &str = include_str!("../decks/cyc3.deck");
pub const CUBIC_DECK: &str = include_str!("../decks/cubic.deck");
pub const TRIV_DECK: &str = include_str!("../decks/triv.deck");

#[derive(Clone, Debug, PartialEq, Eq)]
enum FieldDef {
    Ext { base: String, modulus: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct AlgebraDef {
    field: String,
    basis: Vec<String>,
    /// `(left, right, [(coefficient, basis name)])`.
    products: Vec<(String, String, Vec<(String, String)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GradingDef {
    algebra: String,
    group: String,
    labels: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RingDef {
    Base(String),
    Dual(String, usize),
    Poly(String, Vec<String>),
    GroupAlg(String, String),
    Product(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct MapDef {
    grading: String,
    ring: String,
    entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Field(String, FieldDef),
    Group(String, String),
    Algebra(String, AlgebraDef),
    Grading(String, GradingDef),
    Ring(String, RingDef),
    Map(String, MapDef),
}

impl Item {
    fn name(&self) -> &str {
        match self {
            Item::Field(n, _)
            | Item::Group(n, _)
            | Item::Algebra(n, _)
            | Item::Grading(n, _)
            | Item::Ring(n, _)
            | Item::Map(n, _) => n,
        }
    }
}

/// A parsed deck. Definitions are resolved on demand, so a deck can name a
/// labelling that violates the grading axiom and `check` reports it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Deck {
    items: Vec<Item>,
}

fn deck_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Deck {
        line,
        msg: msg.into(),
    }
}

fn parse_list(text: &str) -> Option<Vec<String>> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    Some(split_top_level(inner))
}

fn parse_terms(rhs: &str) -> Vec<(String, String)> {
    let rhs = rhs.trim();
    if rhs == "0" {
        return Vec::new();
    }
    rhs.split(" + ")
        .map(|t| {
            let t = t.trim();
            match t.rsplit_once(char::is_whitespace) {
                Some((c, name)) => (c.trim().to_string(), name.to_string()),
                None => ("1".to_string(), t.to_string()),
            }
        })
        .collect()
}

impl Deck {
    pub fn parse(text: &str) -> Result<Deck> {
        let mut deck = Deck::default();
        deck.extend(text)?;
        Ok(deck)
    }

    /// The four bundled decks.
    pub fn bundled() -> Deck {
        let mut deck = Deck::default();
        for text in [ZERO6_DECK, CYC3_DECK, CUBIC_DECK, TRIV_DECK] {
            deck.extend(text).expect("bundled decks parse");
        }
        deck
    }

    fn push(&mut self, line: usize, item: Item) -> Result<()> {
        if let Some(old) = self.items.iter().find(|i| i.name() == item.name()) {
            if *old == item {
                return Ok(());
            }
            return Err(deck_err(
                line,
                format!("`{}` is defined twice", item.name()),
            ));
        }
        self.items.push(item);
        Ok(())
    }

    /// Adds the definitions of another deck text.
    pub fn extend(&mut self, text: &str) -> Result<()> {
        let mut current_algebra: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (kw, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            match kw {
                "field" => {
                    let (name, def) = rest
                        .split_once('=')
                        .ok_or_else(|| deck_err(line, "expected `field NAME = ext BASE [..]`"))?;
                    let words: Vec<&str> = def.split_whitespace().collect();
                    if words.len() < 3 || words[0] != "ext" {
                        return Err(deck_err(line, "expected `ext BASE [c0,...,1]`"));
                    }
                    let list = words[2..].join("");
                    let modulus = parse_list(&list)
                        .ok_or_else(|| deck_err(line, "modulus must be a bracketed list"))?;
                    let item = Item::Field(
                        name.trim().to_string(),
                        FieldDef::Ext {
                            base: words[1].to_string(),
                            modulus,
                        },
                    );
                    self.push(line, item)?;
                }
                "group" => {
                    let (name, def) = rest
                        .split_once('=')
                        .ok_or_else(|| deck_err(line, "expected `group NAME = LITERAL`"))?;
                    parse_group_literal(def.trim()).map_err(|e| deck_err(line, e.to_string()))?;
                    self.push(
                        line,
                        Item::Group(name.trim().to_string(), def.trim().to_string()),
                    )?;
                }
                "algebra" => {
                    let w: Vec<&str> = rest.split_whitespace().collect();
                    if w.len() != 7 || w[1] != "over" || w[3] != "dim" || w[5] != "basis" {
                        return Err(deck_err(
                            line,
                            "expected `algebra NAME over FIELD dim N basis b1,b2,...`",
                        ));
                    }
                    let basis: Vec<String> =
                        w[6].split(',').map(|s| s.trim().to_string()).collect();
                    let dim: usize = w[4]
                        .parse()
                        .map_err(|_| deck_err(line, "dimension must be a number"))?;
                    if basis.len() != dim {
                        return Err(deck_err(
                            line,
                            format!("{} basis names for dimension {dim}", basis.len()),
                        ));
                    }
                    let item = Item::Algebra(
                        w[0].to_string(),
                        AlgebraDef {
                            field: w[2].to_string(),
                            basis,
                            products: Vec::new(),
                        },
                    );
                    self.push(line, item)?;
                    current_algebra = Some(w[0].to_string());
                }
                "mul" => {
                    let alg = current_algebra
                        .clone()
                        .ok_or_else(|| deck_err(line, "`mul` before any `algebra`"))?;
                    let (lhs, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| deck_err(line, "expected `mul X Y = TERMS`"))?;
                    let pair: Vec<&str> = lhs.split_whitespace().collect();
                    if pair.len() != 2 {
                        return Err(deck_err(line, "expected two basis names before `=`"));
                    }
                    let terms = parse_terms(rhs);
                    let Some(Item::Algebra(_, def)) =
                        self.items.iter_mut().find(|i| i.name() == alg)
                    else {
                        unreachable!("current algebra exists")
                    };
                    for name in pair
                        .iter()
                        .copied()
                        .chain(terms.iter().map(|(_, n)| n.as_str()))
                    {
                        if !def.basis.iter().any(|b| b == name) {
                            return Err(deck_err(line, format!("unknown basis vector `{name}`")));
                        }
                    }
                    if def
                        .products
                        .iter()
                        .any(|(a, b, _)| a == pair[0] && b == pair[1])
                    {
                        return Err(deck_err(
                            line,
                            format!("product {} {} given twice", pair[0], pair[1]),
                        ));
                    }
                    def.products
                        .push((pair[0].to_string(), pair[1].to_string(), terms));
                }
                "grading" => {
                    let (head, labels) = rest
                        .split_once(" deg ")
                        .ok_or_else(|| deck_err(line, "expected `... deg b=g ...`"))?;
                    let w: Vec<&str> = head.split_whitespace().collect();
                    if w.len() < 5 || w[1] != "on" || w[3] != "by" {
                        return Err(deck_err(
                            line,
                            "expected `grading NAME on ALGEBRA by GROUP deg ...`",
                        ));
                    }
                    let labels = labels
                        .split_whitespace()
                        .map(|p| {
                            p.split_once('=')
                                .map(|(a, b)| (a.to_string(), b.to_string()))
                                .ok_or_else(|| deck_err(line, format!("bad degree `{p}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let item = Item::Grading(
                        w[0].to_string(),
                        GradingDef {
                            algebra: w[2].to_string(),
                            group: w[4..].join(" "),
                            labels,
                        },
                    );
                    self.push(line, item)?;
                }
                "ring" => {
                    let (name, def) = rest
                        .split_once('=')
                        .ok_or_else(|| deck_err(line, "expected `ring NAME = ...`"))?;
                    let w: Vec<&str> = def.split_whitespace().collect();
                    let def = match w.as_slice() {
                        ["base", k] => RingDef::Base(k.to_string()),
                        ["dual", k, n] => RingDef::Dual(
                            k.to_string(),
                            n.parse()
                                .map_err(|_| deck_err(line, "order must be a number"))?,
                        ),
                        ["poly", k, rest @ ..] => RingDef::Poly(
                            k.to_string(),
                            parse_list(&rest.join("")).ok_or_else(|| {
                                deck_err(line, "modulus must be a bracketed list")
                            })?,
                        ),
                        ["groupalg", k, g @ ..] if !g.is_empty() => {
                            RingDef::GroupAlg(k.to_string(), g.join(" "))
                        }
                        ["product", a, b] => RingDef::Product(a.to_string(), b.to_string()),
                        _ => return Err(deck_err(line, "unknown ring form")),
                    };
                    self.push(line, Item::Ring(name.trim().to_string(), def))?;
                }
                "map" => {
                    let (head, body) = rest.split_once('=').ok_or_else(|| {
                        deck_err(line, "expected `map NAME on GRADING over RING = [[..]]`")
                    })?;
                    let w: Vec<&str> = head.split_whitespace().collect();
                    if w.len() != 5 || w[1] != "on" || w[3] != "over" {
                        return Err(deck_err(
                            line,
                            "expected `map NAME on GRADING over RING = [[..]]`",
                        ));
                    }
                    let rows = parse_list(body)
                        .ok_or_else(|| deck_err(line, "matrix must be a bracketed list of rows"))?;
                    let entries = rows
                        .iter()
                        .map(|r| {
                            parse_list(r).ok_or_else(|| deck_err(line, format!("bad row `{r}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let item = Item::Map(
                        w[0].to_string(),
                        MapDef {
                            grading: w[2].to_string(),
                            ring: w[4].to_string(),
                            entries,
                        },
                    );
                    self.push(line, item)?;
                }
                other => return Err(deck_err(line, format!("unknown keyword `{other}`"))),
            }
        }
        Ok(())
    }

    /// Canonical text; parsing it gives back an equal deck.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            match item {
                Item::Field(n, FieldDef::Ext { base, modulus }) => {
                    let _ = writeln!(out, "field {n} = ext {base} [{}]", modulus.join(","));
                }
                Item::Group(n, g) => {
                    let _ = writeln!(out, "group {n} = {g}");
                }
                Item::Algebra(n, a) => {
                    let _ = writeln!(
                        out,
                        "algebra {n} over {} dim {} basis {}",
                        a.field,
                        a.basis.len(),
                        a.basis.join(",")
                    );
                    for (l, r, terms) in &a.products {
                        let rhs = if terms.is_empty() {
                            "0".to_string()
                        } else {
                            terms
                                .iter()
                                .map(|(c, b)| {
                                    if c == "1" {
                                        b.clone()
                                    } else {
                                        format!("{c} {b}")
                                    }
                                })
                                .collect::<Vec<_>>()
                                .join(" + ")
                        };
                        let _ = writeln!(out, "mul {l} {r} = {rhs}");
                    }
                }
                Item::Grading(n, g) => {
                    let labels: Vec<String> =
                        g.labels.iter().map(|(b, d)| format!("{b}={d}")).collect();
                    let _ = writeln!(
                        out,
                        "grading {n} on {} by {} deg {}",
                        g.algebra,
                        g.group,
                        labels.join(" ")
                    );
                }
                Item::Ring(n, r) => {
                    let def = match r {
                        RingDef::Base(k) => format!("base {k}"),
                        RingDef::Dual(k, m) => format!("dual {k} {m}"),
                        RingDef::Poly(k, c) => format!("poly {k} [{}]", c.join(",")),
                        RingDef::GroupAlg(k, g) => format!("groupalg {k} {g}"),
                        RingDef::Product(a, b) => format!("product {a} {b}"),
                    };
                    let _ = writeln!(out, "ring {n} = {def}");
                }
                Item::Map(n, m) => {
                    let rows: Vec<String> = m
                        .entries
                        .iter()
                        .map(|r| format!("[{}]", r.join(",")))
                        .collect();
                    let _ = writeln!(
                        out,
                        "map {n} on {} over {} = [{}]",
                        m.grading,
                        m.ring,
                        rows.join(",")
                    );
                }
            }
        }
        out
    }

    pub fn names(&self) -> Vec<&str> {
        self.items.iter().map(|i| i.name()).collect()
    }

    fn find(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }

    pub fn field(&self, name: &str) -> Result<Field> {
        match self.find(name) {
            Some(Item::Field(_, FieldDef::Ext { base, modulus })) => {
                let b = self.field(base)?;
                let m = modulus
                    .iter()
                    .map(|c| b.parse(c))
                    .collect::<Result<Vec<_>>>()?;
                Field::extension(&b, m)
            }
            Some(_) => Err(Error::Usage(format!("`{name}` is not a field"))),
            None => builtin_field(name),
        }
    }

    pub fn group(&self, text: &str) -> Result<(FGAbelianGroup, Option<crate::abgroups::Quotient>)> {
        match self.find(text) {
            Some(Item::Group(_, lit)) => parse_group_literal(lit),
            Some(_) => Err(Error::Usage(format!("`{text}` is not a group"))),
            None => parse_group_literal(text),
        }
    }

    pub fn algebra(&self, name: &str) -> Result<Algebra> {
        let Some(Item::Algebra(_, def)) = self.find(name) else {
            return Err(Error::Usage(format!("no algebra named `{name}`")));
        };
        let f = self.field(&def.field)?;
        let n = def.basis.len();
        let index = |b: &str| {
            def.basis
                .iter()
                .position(|x| x == b)
                .expect("checked at parse")
        };
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for (l, r, terms) in &def.products {
            let v = &mut table[index(l)][index(r)];
            for (c, b) in terms {
                let k = index(b);
                v[k] = f.add(&v[k], &f.parse(c)?);
            }
        }
        Algebra::new(&f, def.basis.clone(), table)
    }

    /// The algebra, group and labels of a grading, without checking the
    /// grading axiom.
    pub fn grading_parts(&self, name: &str) -> Result<(Algebra, FGAbelianGroup, Vec<Vec<i64>>)> {
        let Some(Item::Grading(_, def)) = self.find(name) else {
            return Err(Error::Usage(format!("no grading named `{name}`")));
        };
        let a = self.algebra(&def.algebra)?;
        let (group, presented) = self.group(&def.group)?;
        let mut labels = vec![None; a.dim()];
        for (b, d) in &def.labels {
            let i = a.index_of(b).ok_or_else(|| {
                Error::Usage(format!("unknown basis vector `{b}` in grading {name}"))
            })?;
            let elem = match &presented {
                None => group.parse_elem(d)?,
                Some(q) => {
                    let summands = FGAbelianGroup::new(Vec::new(), q.projection.len())?;
                    q.project(&summands.parse_elem(d)?)
                }
            };
            labels[i] = Some(elem);
        }
        let labels = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::Usage(format!("no degree for `{}`", a.name(i)))))
            .collect::<Result<Vec<_>>>()?;
        Ok((a, group, labels))
    }

    pub fn grading(&self, name: &str) -> Result<Grading> {
        let (a, g, labels) = self.grading_parts(name)?;
        build_grading(&a, &g, labels)
    }

    pub fn ring(&self, name: &str) -> Result<TestRing> {
        match self.find(name) {
            Some(Item::Ring(_, def)) => match def {
                RingDef::Base(k) => Ok(TestRing::base_field(&self.field(k)?)),
                RingDef::Dual(k, m) => TestRing::dual_numbers(&self.field(k)?, *m),
                RingDef::Poly(k, c) => {
                    let f = self.field(k)?;
                    let m = c
                        .iter()
                        .map(|x| f.parse(x))
                        .collect::<Result<Vec<Elem>>>()?;
                    TestRing::truncated_poly(&f, &m)
                }
                RingDef::GroupAlg(k, g) => {
                    let (group, _) = self.group(g)?;
                    TestRing::group_algebra_finite(&self.field(k)?, &group)
                }
                RingDef::Product(a, b) => TestRing::product(&self.ring(a)?, &self.ring(b)?),
            },
            Some(_) => Err(Error::Usage(format!("`{name}` is not a ring"))),
            None => Ok(TestRing::base_field(&self.field(name)?)),
        }
    }

    /// The grading, ring and matrix of a map.
    pub fn map(&self, name: &str) -> Result<(Grading, TestRing, Matrix<Vec<Elem>>)> {
        let Some(Item::Map(_, def)) = self.find(name) else {
            return Err(Error::Usage(format!("no map named `{name}`")));
        };
        let g = self.grading(&def.grading)?;
        let r = self.ring(&def.ring)?;
        let n = g.dim();
        if def.entries.len() != n || def.entries.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("map {name} must be {n}x{n}")));
        }
        let m = def
            .entries
            .iter()
            .map(|row| row.iter().map(|x| r.parse(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok((g, r, m))
    }
}

fn builtin_field(name: &str) -> Result<Field> {
    if name == "Q" {
        return Ok(Field::rationals());
    }
    let q: u64 = name
        .strip_prefix('F')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Usage(format!("unknown field `{name}`")))?;
    Field::finite(q)
}

/// `Z/6`, `Z^2`, `Z/2 + Z/4 + Z` or `0`. A literal that is not already in
/// invariant-factor form comes with its presentation, whose summand
/// coordinates are used for degree labels.
fn parse_group_literal(text: &str) -> Result<(FGAbelianGroup, Option<crate::abgroups::Quotient>)> {
    let t = text.trim();
    if t == "0" {
        return Ok((FGAbelianGroup::trivial(), None));
    }
    let mut orders = Vec::new();
    for part in t.split('+') {
        let p = part.trim();
        if p == "Z" {
            orders.push(0);
        } else if let Some(r) = p.strip_prefix("Z^") {
            let k: usize = r
                .parse()
                .map_err(|_| Error::Usage(format!("bad group `{t}`")))?;
            orders.extend(std::iter::repeat_n(0, k));
        } else if let Some(d) = p.strip_prefix("Z/") {
            let d: u64 = d
                .parse()
                .map_err(|_| Error::Usage(format!("bad group `{t}`")))?;
            if d < 2 {
                return Err(Error::Usage(format!("bad cyclic order in `{t}`")));
            }
            orders.push(d);
        } else {
            return Err(Error::Usage(format!("bad group `{t}`")));
        }
    }
    let torsion: Vec<u64> = orders.iter().copied().filter(|&d| d != 0).collect();
    let free = orders.len() - torsion.len();
    let in_order = orders.iter().skip_while(|&&d| d != 0).all(|&d| d == 0);
    if in_order {
        if let Ok(g) = FGAbelianGroup::new(torsion, free) {
            return Ok((g, None));
        }
    }
    let q = FGAbelianGroup::from_cyclic_factors(&orders);
    Ok((q.group.clone(), Some(q)))
}

/// Moves a grading to another field: by scalar extension, or by reducing
/// rational structure constants modulo the characteristic first.
pub fn retarget(g: &Grading, k: &Field) -> Result<Grading> {
    if g.field() == k {
        return Ok(g.clone());
    }
    if let Ok(h) = g.extend_scalars(k) {
        return Ok(h);
    }
    let f = g.field();
    if !f.is_finite() && f.degree() == 1 && k.is_finite() {
        let p = Field::prime(k.characteristic())?;
        let h = g.reduce(&p)?;
        return if &p == k { Ok(h) } else { h.extend_scalars(k) };
    }
    Err(Error::FieldMismatch(f.name().into(), k.name().into()))
}

#[derive(Parser, Debug)]
#[command(
    name = "gradscheme",
    version,
    about = "Points of automorphism group schemes of gradings, and Weyl groups"
)]
pub struct Cli {
    /// Deck files; the bundled decks are used when none is given.
    #[arg(long, global = true)]
    pub deck: Vec<PathBuf>,
    /// Bound on the enumeration search space.
    #[arg(long, global = true, default_value_t = points::DEFAULT_CAP as u64)]
    pub cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = ReportFormat::Plain)]
    pub report: ReportFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WeylMode {
    /// Over an algebraic closure.
    Closure,
    /// Over the base field.
    Rational,
    /// Search finite fields for one where both agree.
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctorArg {
    Aut,
    Stab,
    Diag,
    Autgamma,
}

impl From<FunctorArg> for Functor {
    fn from(f: FunctorArg) -> Functor {
        match f {
            FunctorArg::Aut => Functor::AutA,
            FunctorArg::Stab => Functor::Stab,
            FunctorArg::Diag => Functor::Diag,
            FunctorArg::Autgamma => Functor::AutGamma,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify the grading axiom directly and through the generic operator.
    Check {
        grading: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Support, components and product pattern.
    Support {
        grading: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// The universal group and the comparison map to the grading group.
    Universal { grading: String },
    /// The Weyl group.
    Weyl {
        grading: String,
        #[arg(long, value_enum, default_value_t = WeylMode::Closure)]
        mode: WeylMode,
        #[arg(long)]
        field: Option<String>,
    },
    /// Enumerate points of a subfunctor of Aut(A) with values in a ring.
    Points {
        grading: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, value_enum, default_value_t = FunctorArg::Aut)]
        functor: FunctorArg,
        #[arg(long)]
        field: Option<String>,
        /// Print every point.
        #[arg(long)]
        list: bool,
    },
    /// Membership of a map in every subfunctor, with the generic tests.
    Member { map: String },
    /// Primitive idempotents of a ring.
    Idempotents { ring: String },
    /// The exact sequence Stab -> Aut(Gamma) -> W over a finite field.
    Ses {
        grading: String,
        #[arg(long)]
        field: Option<String>,
    },
    /// Compare the generic centralizer and normalizer tests with the
    /// direct membership tests.
    VerifyTheorem {
        grading: String,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 100)]
        draws: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the deck in canonical form.
    Print,
}

/// Output lines and exit code of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub code: i32,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn fail(&mut self) {
        self.code = self.code.max(1);
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// Exit code for an error: 1 for a violated identity, 2 for bad input.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Identity(_) => 1,
        _ => 2,
    }
}

/// Parses the arguments (program name first), runs the command and returns
/// the exit code and output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let deck = if cli.deck.is_empty() {
        Ok(Deck::bundled())
    } else {
        let mut deck = Deck::default();
        let mut res = Ok(());
        for p in &cli.deck {
            res = std::fs::read_to_string(p)
                .map_err(|e| Error::Usage(format!("{}: {e}", p.display())))
                .and_then(|t| deck.extend(&t));
            if res.is_err() {
                break;
            }
        }
        res.map(|_| deck)
    };
    let outcome = deck.and_then(|d| execute(&d, &cli));
    match outcome {
        Ok(r) => (r.code, r.text()),
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

fn grading_on(deck: &Deck, name: &str, field: &Option<String>) -> Result<Grading> {
    let g = deck.grading(name)?;
    match field {
        Some(k) => retarget(&g, &deck.field(k)?),
        None => Ok(g),
    }
}

pub fn execute(deck: &Deck, cli: &Cli) -> Result<Report> {
    let cap = cli.cap as u128;
    let mut rep = Report::default();
    match &cli.command {
        Command::Check { grading, field } => {
            let (mut a, group, labels) = deck.grading_parts(grading)?;
            if let Some(k) = field {
                let k = deck.field(k)?;
                a = a.extend_scalars(&k).or_else(|_| a.reduce(&k))?;
            }
            rep.line(format!("grading={grading}"));
            rep.line(format!("field={}", a.field()));
            let direct = build_grading(&a, &group, labels.clone());
            let generic = verify_grading_generic(&a, &group, &labels);
            match &direct {
                Ok(_) => rep.line("check.direct=ok"),
                Err(e) => rep.line(format!("check.direct=fail: {e}")),
            }
            rep.line(format!(
                "check.generic={}",
                if generic { "ok" } else { "fail" }
            ));
            if direct.is_ok() != generic {
                return Err(Error::Identity(
                    "direct and generic grading checks disagree".into(),
                ));
            }
            if !generic {
                rep.fail();
            }
        }
        Command::Support { grading, field } => {
            let g = grading_on(deck, grading, field)?;
            support_lines(&mut rep, grading, &g);
        }
        Command::Universal { grading } => {
            let g = deck.grading(grading)?;
            let u = g.universal_group()?;
            rep.line(format!("grading={grading}"));
            rep.line(format!("U={}", u.group));
            for (s, d) in u.degrees.iter().enumerate() {
                rep.line(format!(
                    "deg_U {}={}",
                    g.format_support_elem(s),
                    u.group.format_elem(d)
                ));
            }
            for (i, img) in u.fold.iter().enumerate() {
                rep.line(format!("fold u{i}={}", g.group().format_elem(img)));
            }
            rep.line(format!("tors_U.order={}", u.group.torsion_order()));
        }
        Command::Weyl {
            grading,
            mode,
            field,
        } => {
            let g = grading_on(deck, grading, field)?;
            rep.line(format!("grading={grading}"));
            rep.line(format!("field={}", g.field()));
            rep.line(format!("support={}", weyl::support_labels(&g).join(",")));
            let (name, w) = match mode {
                WeylMode::Closure => ("closure", weyl::weyl_closure(&g)?),
                WeylMode::Rational => ("rational", weyl::weyl_over_field(&g, cap)?),
                WeylMode::Split => match weyl::splitting_field(&g, 4)? {
                    Some(s) => {
                        rep.line(format!("weyl.field={}", s.field));
                        ("split", s.weyl)
                    }
                    None => {
                        rep.line("weyl.field=none found");
                        rep.fail();
                        return Ok(rep);
                    }
                },
            };
            rep.line(format!("weyl.mode={name}"));
            rep.line(format!("weyl.order={}", w.order()));
            rep.line(format!("weyl.generators={}", w.format_generators()));
        }
        Command::Points {
            grading,
            ring,
            functor,
            field,
            list,
        } => {
            let g = grading_on(deck, grading, field)?;
            let r = match ring {
                Some(r) => deck.ring(r)?,
                None => TestRing::base_field(g.field()),
            };
            rep.line(format!("grading={grading}"));
            rep.line(format!("ring={}", r.name()));
            let functor = Functor::from(*functor);
            rep.line(format!("functor={}", functor.name()));
            match Tabled::new(&r) {
                Ok(t) => points_lines(&mut rep, &Stage::new(&g, &t)?, functor, cap, *list)?,
                Err(_) => points_lines(&mut rep, &Stage::new(&g, &r)?, functor, cap, *list)?,
            }
        }
        Command::Member { map } => {
            let (g, r, phi) = deck.map(map)?;
            rep.line(format!("map={map}"));
            let stage = Stage::new(&g, &r)?;
            member_lines(&mut rep, &stage, &phi)?;
        }
        Command::Idempotents { ring } => {
            let r = deck.ring(ring)?;
            let ids = r.idempotents()?;
            rep.line(format!("ring={}", r.name()));
            rep.line(format!("blocks={}", ids.len()));
            for (i, e) in ids.iter().enumerate() {
                rep.line(format!("e_{i}={}", r.format(e)));
            }
            rep.line(format!("nilradical.dim={}", r.nilradical().len()));
        }
        Command::Ses { grading, field } => {
            let g = grading_on(deck, grading, field)?;
            let s = weyl::ses_check(&g, cap)?;
            rep.line(format!("grading={grading}"));
            rep.line(format!("field={}", s.field));
            rep.line(format!("aut_gamma.order={}", s.aut_gamma));
            rep.line(format!("stab.order={}", s.stab));
            rep.line(format!("weyl.order={}", s.weyl.order()));
            rep.line(format!("weyl.generators={}", s.weyl.format_generators()));
            rep.line(format!("closure.order={}", s.closure.order()));
            if let Some(c) = s.thin_count {
                rep.line(format!("thin_solver.aut_gamma.order={c}"));
            }
            if s.passed() {
                rep.line("ses: ok");
            } else {
                rep.line("ses: FAIL");
                rep.fail();
            }
        }
        Command::VerifyTheorem {
            grading,
            ring,
            field,
            draws,
            seed,
        } => {
            let g = grading_on(deck, grading, field)?;
            let rings = match ring {
                Some(r) => vec![deck.ring(r)?],
                None => fixtures::battery_rings(g.field())?,
            };
            rep.line(format!("grading={grading}"));
            rep.line(format!("field={}", g.field()));
            for r in &rings {
                let report = match Tabled::new(r) {
                    Ok(t) => points::theorem_check(&Stage::new(&g, &t)?, cap, *draws, *seed)?,
                    Err(_) => points::theorem_check(&Stage::new(&g, r)?, cap, *draws, *seed)?,
                };
                theorem_lines(&mut rep, r.name(), &report);
            }
        }
        Command::Print => {
            rep.lines.extend(deck.print().lines().map(String::from));
        }
    }
    Ok(rep)
}

fn support_lines(rep: &mut Report, name: &str, g: &Grading) {
    rep.line(format!("grading={name}"));
    rep.line(format!("group={}", g.group()));
    rep.line(format!("support={}", weyl::support_labels(g).join(",")));
    for s in 0..g.support().len() {
        let names: Vec<&str> = g
            .component(s)
            .iter()
            .map(|&i| g.algebra().name(i))
            .collect();
        rep.line(format!(
            "component {}={}",
            g.format_support_elem(s),
            names.join(",")
        ));
    }
    let pairs: Vec<String> = g
        .pattern()
        .iter()
        .map(|&(a, b)| {
            format!(
                "({},{})",
                g.format_support_elem(a),
                g.format_support_elem(b)
            )
        })
        .collect();
    rep.line(format!("pattern={}", pairs.join(" ")));
    rep.line(format!("thin={}", g.is_thin()));
}

fn points_lines<R: CommRing>(
    rep: &mut Report,
    stage: &Stage<'_, R>,
    functor: Functor,
    cap: u128,
    list: bool,
) -> Result<()> {
    let pts = points::enumerate_points(stage, functor, cap)?;
    rep.line(format!("points.count={}", pts.len()));
    if functor == Functor::Diag {
        let via_chars = points::diag_points(stage, cap)?;
        rep.line(format!("diag.characters={}", via_chars.len()));
        if via_chars != pts {
            return Err(Error::Identity(
                "characters of U and enumerated diagonal points differ".into(),
            ));
        }
    }
    if list {
        for (k, phi) in pts.iter().enumerate() {
            rep.line(format!(
                "point[{k}]={}",
                stage.format_images(phi).join("; ")
            ));
        }
    }
    Ok(())
}

fn member_lines<R: CommRing>(
    rep: &mut Report,
    stage: &Stage<'_, R>,
    phi: &Matrix<R::E>,
) -> Result<()> {
    let g = stage.grading();
    rep.line(format!("ring={}", ring_label(stage)));
    for l in stage.format_images(phi) {
        rep.line(format!("image {l}"));
    }
    if let Some((i, j)) = stage.multiplicative_failure(phi) {
        let a = g.algebra();
        rep.line(format!("aut=false (fails on {}*{})", a.name(i), a.name(j)));
    } else {
        rep.line(format!("aut={}", stage.is_automorphism(phi)));
    }
    let stab = stage.is_stab(phi);
    let autgamma = stage.is_autgamma(phi);
    rep.line(format!("stab={stab}"));
    rep.line(format!("diag={}", stage.is_diag(phi)));
    rep.line(format!("autgamma={autgamma}"));
    let labels = weyl::support_labels(g);
    match stage.block_permutations(phi) {
        Ok(perms) => {
            for (b, p) in perms.iter().enumerate() {
                let perm = weyl::Perm(p.clone());
                rep.line(format!("block e_{b} perm={}", perm.format_with(&labels)));
            }
        }
        Err(f) => rep.line(format!(
            "block e_{} mixes components at entry ({},{})",
            f.block, f.row, f.col
        )),
    }
    let cent = stage.cent_generic(phi);
    let norm = stage.norm_generic(phi)?;
    rep.line(format!("cent.generic={cent}"));
    rep.line(format!("norm.generic={}", norm.is_some()));
    if cent != stab || norm.is_some() != autgamma {
        return Err(Error::Identity(
            "generic and direct membership disagree".into(),
        ));
    }
    match stage.dgroup_norm(phi)? {
        DGroupVerdict::Member => rep.line("dgroup=member"),
        DGroupVerdict::NotGraded => rep.line("dgroup=non-member (does not permute components)"),
        DGroupVerdict::Indeterminate(msg) => rep.line(format!("dgroup=indeterminate ({msg})")),
        DGroupVerdict::NonMember {
            relation,
            forced,
            product,
        } => {
            rep.line("dgroup=non-member");
            let forced: Vec<String> = labels
                .iter()
                .zip(&forced)
                .map(|(s, x)| format!("xi({s})={x}"))
                .collect();
            rep.line(format!("dgroup.forced={}", forced.join(", ")));
            let rel: Vec<String> = relation.iter().map(|a| a.to_string()).collect();
            let factors: Vec<String> = labels
                .iter()
                .zip(&relation)
                .filter(|(_, &a)| a != 0)
                .map(|(s, a)| format!("xi({s})^{a}"))
                .collect();
            rep.line(format!(
                "dgroup.certificate=relation ({}) on support ({}): {} = {product} != 1",
                rel.join(","),
                labels.join(","),
                factors.join(" * ")
            ));
        }
    }
    let char_p = g.field().characteristic();
    if norm.is_some() && !cent && char_p != 0 {
        let tors = g.universal_group()?.group.torsion_order();
        if tors % char_p == 0 {
            rep.line(format!(
                "WARN: in the normalizer but not the centralizer, while char {char_p} divides |tors U| = {tors}; a normalizer equal to the centralizer is contradicted by this point"
            ));
        }
    }
    Ok(())
}

fn ring_label<R: CommRing>(stage: &Stage<'_, R>) -> String {
    match stage.ring().size() {
        Some(n) => format!("{} elements over {}", n, stage.ring().field()),
        None => format!("over {}", stage.ring().field()),
    }
}

fn theorem_lines(rep: &mut Report, ring: &str, r: &points::TheoremReport) {
    let how = match r.coverage {
        Coverage::Enumerated => "enumerated",
        Coverage::Sampled => "sampled",
    };
    rep.line(format!("ring={ring} points={} ({how})", r.points));
    let verdict = |k: usize| if k == r.points { "ok" } else { "FAIL" };
    rep.line(format!(
        "  cent==stab: {} ({}/{})",
        verdict(r.cent_agree),
        r.cent_agree,
        r.points
    ));
    rep.line(format!(
        "  norm==autgamma: {} ({}/{})",
        verdict(r.norm_agree),
        r.norm_agree,
        r.points
    ));
    for f in &r.failures {
        rep.line(format!("  mismatch: {f}"));
    }
    if !r.passed() {
        rep.fail();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_decks_round_trip() {
        let deck = Deck::bundled();
        let text = deck.print();
        let again = Deck::parse(&text).unwrap();
        assert_eq!(deck, again);
        assert_eq!(again.print(), text);
    }

    #[test]
    fn bundled_gradings_match_fixtures() {
        let deck = Deck::bundled();
        let q = Field::rationals();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            deck.grading("GammaZero6").unwrap(),
            fixtures::zero6(&q).unwrap()
        );
        assert_eq!(
            deck.grading("GammaCyc3").unwrap(),
            fixtures::cyc3(&f3).unwrap()
        );
        assert_eq!(
            deck.grading("GammaCubic").unwrap(),
            fixtures::cubic(&q).unwrap()
        );
        assert_eq!(
            deck.grading("GammaTriv").unwrap(),
            fixtures::triv(&f3).unwrap()
        );
    }

    #[test]
    fn deck_errors_carry_line_numbers() {
        let err = Deck::parse("algebra A over Q dim 2 basis a,b\nmul a c = a\n").unwrap_err();
        assert_eq!(
            err,
            Error::Deck {
                line: 2,
                msg: "unknown basis vector `c`".into()
            }
        );
        assert!(matches!(
            Deck::parse("frobnicate x"),
            Err(Error::Deck { line: 1, .. })
        ));
    }

    #[test]
    fn non_canonical_group_literal() {
        let deck = Deck::parse(
            "algebra A over F5 dim 2 basis a,b\ngrading G on A by Z/2 + Z/3 deg a=(1,0) b=(0,1)\n",
        )
        .unwrap();
        let g = deck.grading("G").unwrap();
        assert_eq!(g.group(), &FGAbelianGroup::cyclic(6));
        let order_of = |i: usize| g.group().element_order(&g.labels()[i]).unwrap();
        assert_eq!((order_of(0), order_of(1)), (2, 3));
    }

    #[test]
    fn retarget_reduces_rationals() {
        let g = fixtures::cubic(&Field::rationals()).unwrap();
        let f9 = Field::finite(9).unwrap();
        let h = retarget(&g, &f9).unwrap();
        assert_eq!(h.field(), &f9);
        assert_eq!(h.pattern(), g.pattern());
    }
}
