//! Endpoint-preserving monotone maps, monotone partial maps, and the functors
//! between them.
//!
//! A `SimplexMap` with `src = n`, `dst = m` is an arrow n → m of the opposite
//! of the topologists' simplicial category, stored as its image under J: a
//! monotone map from n+2 points to m+2 points fixing both ends. Partial maps
//! count points directly.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Face (`D`) or degeneracy (`S`) operator of the opposite simplicial category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaceKind {
    D,
    S,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexMap {
    src: usize,
    dst: usize,
    image: Vec<usize>,
}

impl SimplexMap {
    /// Validate an image; `ends` optionally pins (src, dst).
    pub fn from_image(image: Vec<usize>, ends: Option<(usize, usize)>) -> Result<Self> {
        if image.len() < 2 {
            return Err(Error::ArityMismatch(format!(
                "image {image:?} has fewer than two points"
            )));
        }
        let n = image.len() - 2;
        let last = image[n + 1];
        if image[0] != 0 || last == 0 {
            return Err(Error::IndexOutOfRange(format!(
                "image {image:?} does not fix the endpoints"
            )));
        }
        if image.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::IndexOutOfRange(format!(
                "image {image:?} is not monotone"
            )));
        }
        let m = last - 1;
        if let Some((en, em)) = ends {
            if (en, em) != (n, m) {
                return Err(Error::ObjectMismatch(format!(
                    "image {image:?} is an arrow {n}->{m}, not {en}->{em}"
                )));
            }
        }
        Ok(SimplexMap {
            src: n,
            dst: m,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        SimplexMap {
            src: n,
            dst: n,
            image: (0..n + 2).collect(),
        }
    }

    /// d(n, i): n → n−1 merges points i and i+1; s(n, i): n−1 → n skips point i+1.
    pub fn gen(kind: FaceKind, n: usize, i: usize) -> Result<Self> {
        match kind {
            FaceKind::D => {
                if n < 1 || i > n {
                    return Err(Error::IndexOutOfRange(format!("d({i})@{n}")));
                }
                Ok(SimplexMap {
                    src: n,
                    dst: n - 1,
                    image: (0..n + 2).map(|x| if x <= i { x } else { x - 1 }).collect(),
                })
            }
            FaceKind::S => {
                if n < 1 || i + 1 > n {
                    return Err(Error::IndexOutOfRange(format!("s({i})@{n}")));
                }
                Ok(SimplexMap {
                    src: n - 1,
                    dst: n,
                    image: (0..n + 1).map(|x| if x <= i { x } else { x + 1 }).collect(),
                })
            }
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// self after f.
    pub fn compose(&self, f: &SimplexMap) -> Result<SimplexMap> {
        if f.dst != self.src {
            return Err(Error::ObjectMismatch(format!("{f} then {self}")));
        }
        Ok(SimplexMap {
            src: f.src,
            dst: self.dst,
            image: f.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    /// The partial map obtained by dropping both endpoints of source and target.
    pub fn hj(&self) -> PartialMonotoneMap {
        let m = self.dst;
        PartialMonotoneMap {
            src: self.src,
            dst: m,
            image: (0..self.src)
                .map(|x| {
                    let e = self.image[x + 1];
                    (1..=m).contains(&e).then(|| e - 1)
                })
                .collect(),
        }
    }

    pub fn as_partial(&self) -> PartialMonotoneMap {
        PartialMonotoneMap {
            src: self.src + 2,
            dst: self.dst + 2,
            image: self.image.iter().map(|&x| Some(x)).collect(),
        }
    }
}

impl fmt::Display for SimplexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]@{}->{}",
            self.image.iter().join(" "),
            self.src,
            self.dst
        )
    }
}

/// Generators of the category of monotone partial maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaPKind {
    Delta,
    Sigma,
    Rho,
}

/// A monotone partial map from `src` points to `dst` points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialMonotoneMap {
    src: usize,
    dst: usize,
    image: Vec<Option<usize>>,
}

impl PartialMonotoneMap {
    pub fn new(dst: usize, image: Vec<Option<usize>>) -> Result<Self> {
        let defined: Vec<usize> = image.iter().flatten().copied().collect();
        if defined.iter().any(|&y| y >= dst) {
            return Err(Error::IndexOutOfRange(format!("value outside 0..{dst}")));
        }
        if defined.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::IndexOutOfRange("partial map is not monotone".into()));
        }
        Ok(PartialMonotoneMap {
            src: image.len(),
            dst,
            image,
        })
    }

    pub fn identity(n: usize) -> Self {
        PartialMonotoneMap {
            src: n,
            dst: n,
            image: (0..n).map(Some).collect(),
        }
    }

    /// delta(i)@n: n → n+1 omits i; sigma(i)@n: n+1 → n hits i twice;
    /// rho(i)@n: n+1 → n is undefined at i.
    pub fn gen(kind: DeltaPKind, n: usize, i: usize) -> Result<Self> {
        let bad = || Error::IndexOutOfRange(format!("{kind:?}({i})@{n}"));
        let image: Vec<Option<usize>> = match kind {
            DeltaPKind::Delta => {
                if i > n {
                    return Err(bad());
                }
                (0..n)
                    .map(|x| Some(if x < i { x } else { x + 1 }))
                    .collect()
            }
            DeltaPKind::Sigma => {
                if n < 1 || i + 1 > n {
                    return Err(bad());
                }
                (0..n + 1)
                    .map(|x| Some(if x <= i { x } else { x - 1 }))
                    .collect()
            }
            DeltaPKind::Rho => {
                if i > n {
                    return Err(bad());
                }
                (0..n + 1)
                    .map(|x| match x.cmp(&i) {
                        std::cmp::Ordering::Less => Some(x),
                        std::cmp::Ordering::Equal => None,
                        std::cmp::Ordering::Greater => Some(x - 1),
                    })
                    .collect()
            }
        };
        let dst = match kind {
            DeltaPKind::Delta => n + 1,
            _ => n,
        };
        Ok(PartialMonotoneMap {
            src: image.len(),
            dst,
            image,
        })
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    /// self after f, defined where both are.
    pub fn compose(&self, f: &PartialMonotoneMap) -> Result<PartialMonotoneMap> {
        if f.dst != self.src {
            return Err(Error::ObjectMismatch(format!("{f} then {self}")));
        }
        Ok(PartialMonotoneMap {
            src: f.src,
            dst: self.dst,
            image: f
                .image
                .iter()
                .map(|x| x.and_then(|y| self.image[y]))
                .collect(),
        })
    }

    /// Source points sent to `j`, in increasing order.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.src)
            .filter(|&x| self.image[x] == Some(j))
            .collect()
    }
}

impl fmt::Display for PartialMonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.image.iter().map(|x| match x {
            Some(y) => y.to_string(),
            None => "-".to_string(),
        });
        write!(f, "{{{}}}@{}->{}", cells.format(" "), self.src, self.dst)
    }
}

/// An arrow n → m of the opposite simplicial category given by the monotone
/// map {0..m} → {0..n} it reverses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpArrow {
    src: usize,
    dst: usize,
    under: Vec<usize>,
}

impl OpArrow {
    pub fn new(src: usize, dst: usize, under: Vec<usize>) -> Result<Self> {
        if under.len() != dst + 1
            || under.iter().any(|&y| y > src)
            || under.windows(2).any(|w| w[0] > w[1])
        {
            return Err(Error::IndexOutOfRange(format!(
                "{under:?} is not monotone {{0..{dst}}} -> {{0..{src}}}"
            )));
        }
        Ok(OpArrow { src, dst, under })
    }

    pub fn identity(n: usize) -> Self {
        OpArrow {
            src: n,
            dst: n,
            under: (0..=n).collect(),
        }
    }

    /// The opposite of the coface (kind D, n → n−1) or codegeneracy (kind S, n−1 → n).
    pub fn gen(kind: FaceKind, n: usize, i: usize) -> Result<Self> {
        match kind {
            FaceKind::D => {
                if n < 1 || i > n {
                    return Err(Error::IndexOutOfRange(format!("d({i})@{n}")));
                }
                OpArrow::new(
                    n,
                    n - 1,
                    (0..n).map(|y| if y < i { y } else { y + 1 }).collect(),
                )
            }
            FaceKind::S => {
                if n < 1 || i + 1 > n {
                    return Err(Error::IndexOutOfRange(format!("s({i})@{n}")));
                }
                OpArrow::new(
                    n - 1,
                    n,
                    (0..=n).map(|y| if y <= i { y } else { y - 1 }).collect(),
                )
            }
        }
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    /// self after f in the opposite category.
    pub fn compose(&self, f: &OpArrow) -> Result<OpArrow> {
        if f.dst != self.src {
            return Err(Error::ObjectMismatch(
                "opposite arrows not composable".into(),
            ));
        }
        Ok(OpArrow {
            src: f.src,
            dst: self.dst,
            under: self.under.iter().map(|&y| f.under[y]).collect(),
        })
    }

    /// Image under J: point x goes to the number of points of {0..m} sent below x.
    pub fn j(&self) -> SimplexMap {
        SimplexMap {
            src: self.src,
            dst: self.dst,
            image: (0..self.src + 2)
                .map(|x| self.under.iter().filter(|&&y| y < x).count())
                .collect(),
        }
    }
}

impl fmt::Display for OpArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "op[{}]@{}->{}",
            self.under.iter().join(" "),
            self.src,
            self.dst
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomCategory {
    Delta2,
    DeltaPlusOp,
}

/// Monotone sequences of length `len` in 0..=max, in lexicographic order.
fn monotone_sequences(len: usize, max: usize) -> Vec<Vec<usize>> {
    (0..=max).combinations_with_replacement(len).collect()
}

pub const HOM_GUARD: usize = 8;

pub fn enumerate_delta2(n: usize, m: usize) -> Result<Vec<SimplexMap>> {
    if n > HOM_GUARD || m > HOM_GUARD {
        return Err(Error::TooLarge(format!("hom set {n}->{m}")));
    }
    Ok(monotone_sequences(n, m + 1)
        .into_iter()
        .map(|mid| {
            let mut image = vec![0];
            image.extend(mid);
            image.push(m + 1);
            SimplexMap {
                src: n,
                dst: m,
                image,
            }
        })
        .collect())
}

pub fn enumerate_op_arrows(n: usize, m: usize) -> Result<Vec<OpArrow>> {
    if n > HOM_GUARD || m > HOM_GUARD {
        return Err(Error::TooLarge(format!("hom set {n}->{m}")));
    }
    Ok(monotone_sequences(m + 1, n)
        .into_iter()
        .map(|under| OpArrow {
            src: n,
            dst: m,
            under,
        })
        .collect())
}

/// All arrows n → m, each given by its image in the endpoint-preserving maps.
pub fn enumerate_homs(cat: HomCategory, n: usize, m: usize) -> Result<Vec<SimplexMap>> {
    match cat {
        HomCategory::Delta2 => enumerate_delta2(n, m),
        HomCategory::DeltaPlusOp => Ok(enumerate_op_arrows(n, m)?.iter().map(OpArrow::j).collect()),
    }
}

/// A product of maps, one per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductMap {
    components: Vec<SimplexMap>,
}

impl ProductMap {
    pub fn new(components: Vec<SimplexMap>) -> Self {
        ProductMap { components }
    }

    pub fn identity(sizes: &[usize]) -> Self {
        ProductMap {
            components: sizes.iter().map(|&k| SimplexMap::identity(k)).collect(),
        }
    }

    pub fn components(&self) -> &[SimplexMap] {
        &self.components
    }

    pub fn sources(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.src).collect()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dst).collect()
    }

    /// self after f, componentwise.
    pub fn compose(&self, f: &ProductMap) -> Result<ProductMap> {
        if f.components.len() != self.components.len() {
            return Err(Error::NotComposable(
                "different numbers of coordinates".into(),
            ));
        }
        let components = self
            .components
            .iter()
            .zip(&f.components)
            .map(|(g, f)| {
                g.compose(f)
                    .map_err(|e| Error::NotComposable(e.to_string()))
            })
            .collect::<Result<_>>()?;
        Ok(ProductMap { components })
    }
}

impl fmt::Display for ProductMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.components.iter().join(" ; "))
    }
}

/// Two rows of labeled points joined by edges. Filled points (`*`) are in the
/// domain or hit; open points (`o`) are undefined or missed.
pub fn render_simplex(f: &SimplexMap) -> String {
    let image: Vec<Option<usize>> = f.image.iter().map(|&x| Some(x)).collect();
    render_rows("D2", f.src, f.dst, &image, f.dst + 2)
}

pub fn render_partial(f: &PartialMonotoneMap) -> String {
    render_rows("Dp", f.src, f.dst, &f.image, f.dst)
}

fn render_rows(tag: &str, n: usize, m: usize, image: &[Option<usize>], points: usize) -> String {
    let src_row = image
        .iter()
        .enumerate()
        .map(|(x, y)| format!("{x}{}", if y.is_some() { '*' } else { 'o' }))
        .join(" ");
    let edges = image
        .iter()
        .enumerate()
        .filter_map(|(x, y)| y.map(|y| format!("{x}>{y}")))
        .join(" ");
    let dst_row = (0..points)
        .map(|y| format!("{y}{}", if image.contains(&Some(y)) { '*' } else { 'o' }))
        .join(" ");
    format!("{tag} {n}->{m}\nsource  {src_row}\nedges   {edges}\ntarget  {dst_row}\n")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rendered {
    Simplex(SimplexMap),
    Partial(PartialMonotoneMap),
}

/// Read back the output of `render_simplex` or `render_partial`.
pub fn parse_rendered(text: &str) -> Result<Rendered> {
    let bad = |what: &str| Error::BadParams(format!("diagram: {what}"));
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if lines.len() != 4 {
        return Err(bad("expected four lines"));
    }
    let (tag, objs) = lines[0].split_once(' ').ok_or_else(|| bad("header"))?;
    let (n, m) = objs.split_once("->").ok_or_else(|| bad("header objects"))?;
    let n: usize = n.trim().parse().map_err(|_| bad("source object"))?;
    let m: usize = m.trim().parse().map_err(|_| bad("target object"))?;
    let row = |line: &str, key: &str| -> Result<Vec<String>> {
        let rest = line.strip_prefix(key).ok_or_else(|| bad(key))?;
        Ok(rest.split_whitespace().map(String::from).collect())
    };
    let src_points = row(lines[1], "source")?;
    let edges = row(lines[2], "edges")?;
    let dst_points = row(lines[3], "target")?;
    let points = match tag {
        "D2" => n + 2,
        "Dp" => n,
        _ => return Err(bad("unknown tag")),
    };
    let mut image = vec![None; points];
    for e in &edges {
        let (x, y) = e.split_once('>').ok_or_else(|| bad("edge"))?;
        let x: usize = x.parse().map_err(|_| bad("edge source"))?;
        let y: usize = y.parse().map_err(|_| bad("edge target"))?;
        if x >= points || image[x].is_some() {
            return Err(bad("edge source out of range or repeated"));
        }
        image[x] = Some(y);
    }
    let filled = |p: &String| p.ends_with('*');
    if src_points.len() != points
        || src_points
            .iter()
            .enumerate()
            .any(|(x, p)| filled(p) != image[x].is_some())
    {
        return Err(bad("source row disagrees with edges"));
    }
    let out = match tag {
        "D2" => {
            let full: Option<Vec<usize>> = image.iter().copied().collect();
            Rendered::Simplex(SimplexMap::from_image(
                full.ok_or_else(|| bad("undefined point"))?,
                Some((n, m)),
            )?)
        }
        _ => Rendered::Partial(PartialMonotoneMap::new(m, image)?),
    };
    let expected = match &out {
        Rendered::Simplex(f) => render_simplex(f),
        Rendered::Partial(f) => render_partial(f),
    };
    let expected_dst: Vec<String> = expected
        .lines()
        .nth(3)
        .map(|l| l.split_whitespace().skip(1).map(String::from).collect())
        .unwrap_or_default();
    if dst_points != expected_dst {
        return Err(bad("target row disagrees with edges"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(f: &SimplexMap) -> Vec<usize> {
        f.image().to_vec()
    }

    #[test]
    fn generators() {
        assert_eq!(
            img(&SimplexMap::gen(FaceKind::D, 1, 0).unwrap()),
            vec![0, 0, 1]
        );
        let s = SimplexMap::gen(FaceKind::S, 1, 0).unwrap();
        assert_eq!((s.src(), s.dst(), img(&s)), (0, 1, vec![0, 2]));
        assert!(SimplexMap::gen(FaceKind::S, 1, 1).is_err());
        assert!(SimplexMap::gen(FaceKind::D, 0, 0).is_err());
    }

    #[test]
    fn compose_face_after_degeneracy() {
        let d = SimplexMap::gen(FaceKind::D, 1, 0).unwrap();
        let s = SimplexMap::gen(FaceKind::S, 1, 0).unwrap();
        assert!(d.compose(&s).unwrap().is_identity());
        assert!(s.compose(&s).is_err());
    }

    #[test]
    fn hj_examples() {
        for i in 0..2 {
            let h = SimplexMap::gen(FaceKind::D, 1, i).unwrap().hj();
            assert_eq!((h.src(), h.dst(), h.image().to_vec()), (1, 0, vec![None]));
        }
        let h = SimplexMap::gen(FaceKind::D, 2, 1).unwrap().hj();
        assert_eq!(h.image(), &[Some(0), Some(0)]);
        let f = SimplexMap::from_image(vec![0, 0, 0, 3, 3, 4], None).unwrap();
        assert_eq!(f.hj().image(), &[None, None, Some(2), Some(2)]);
    }

    #[test]
    fn rho_on_one_point_is_empty() {
        let r = PartialMonotoneMap::gen(DeltaPKind::Rho, 0, 0).unwrap();
        assert_eq!((r.src(), r.dst(), r.image().to_vec()), (1, 0, vec![None]));
    }

    #[test]
    fn small_hom_sets() {
        let h = enumerate_homs(HomCategory::Delta2, 0, 0).unwrap();
        assert_eq!(h, vec![SimplexMap::identity(0)]);
        let h: Vec<_> = enumerate_homs(HomCategory::Delta2, 1, 1)
            .unwrap()
            .iter()
            .map(img)
            .collect();
        assert_eq!(h, vec![vec![0, 0, 2], vec![0, 1, 2], vec![0, 2, 2]]);
        assert!(enumerate_homs(HomCategory::Delta2, 9, 1).is_err());
    }

    #[test]
    fn j_on_generators() {
        for n in 1..5 {
            for i in 0..=n {
                assert_eq!(
                    OpArrow::gen(FaceKind::D, n, i).unwrap().j(),
                    SimplexMap::gen(FaceKind::D, n, i).unwrap()
                );
            }
            for i in 0..n {
                assert_eq!(
                    OpArrow::gen(FaceKind::S, n, i).unwrap().j(),
                    SimplexMap::gen(FaceKind::S, n, i).unwrap()
                );
            }
        }
    }

    #[test]
    fn render_identity_and_face() {
        let id = render_simplex(&SimplexMap::identity(1));
        assert_eq!(
            id,
            "D2 1->1\nsource  0* 1* 2*\nedges   0>0 1>1 2>2\ntarget  0* 1* 2*\n"
        );
        let d = render_partial(&SimplexMap::gen(FaceKind::D, 1, 0).unwrap().hj());
        assert_eq!(d, "Dp 1->0\nsource  0o\nedges   \ntarget  \n");
        assert_eq!(
            parse_rendered(&d).unwrap(),
            Rendered::Partial(SimplexMap::gen(FaceKind::D, 1, 0).unwrap().hj())
        );
    }
}
