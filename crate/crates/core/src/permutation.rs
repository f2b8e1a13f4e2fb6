//! Reversible functions on `n` bits as permutations of `[0, 2^n)`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Largest supported wire count; the image table has `2^n` entries.
pub const MAX_WIDTH: usize = 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("width {n} exceeds the supported maximum of {MAX_WIDTH}")]
    TooWide { n: usize },
    #[error("width must be at least 1")]
    ZeroWidth,
    #[error("expected {expected} images, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A bijection on `[0, 2^n)`; `images[i] = f(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: usize,
    images: Vec<usize>,
}

/// Points moved by a permutation, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    moved: Vec<usize>,
}

impl Support {
    pub fn as_slice(&self) -> &[usize] {
        &self.moved
    }

    pub fn len(&self) -> usize {
        self.moved.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moved.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.moved.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.moved.iter().copied()
    }
}

fn check_width(n: usize) -> Result<(), PermutationError> {
    match n {
        0 => Err(PermutationError::ZeroWidth),
        n if n > MAX_WIDTH => Err(PermutationError::TooWide { n }),
        _ => Ok(()),
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self, PermutationError> {
        check_width(n)?;
        Ok(Permutation {
            n,
            images: (0..1usize << n).collect(),
        })
    }

    pub fn from_images(n: usize, images: Vec<usize>) -> Result<Self, PermutationError> {
        check_width(n)?;
        let size = 1usize << n;
        if images.len() != size {
            return Err(PermutationError::LengthMismatch {
                expected: size,
                found: images.len(),
            });
        }
        let mut hit = vec![false; size];
        for (i, &x) in images.iter().enumerate() {
            if x >= size {
                return Err(PermutationError::NotABijection(format!(
                    "image {x} of {i} is out of range"
                )));
            }
            if std::mem::replace(&mut hit[x], true) {
                return Err(PermutationError::NotABijection(format!(
                    "image {x} appears more than once"
                )));
            }
        }
        Ok(Permutation { n, images })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermutationError> {
        let mut p = Self::identity(n)?;
        let size = p.images.len();
        if a >= size || b >= size {
            return Err(PermutationError::NotABijection(format!(
                "transposition ({a} {b}) out of range"
            )));
        }
        p.images.swap(a, b);
        Ok(p)
    }

    /// Uniformly random permutation by Fisher–Yates.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self, PermutationError> {
        let mut p = Self::identity(n)?;
        for i in (1..p.images.len()).rev() {
            let j = rng.gen_range(0..=i);
            p.images.swap(i, j);
        }
        Ok(p)
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn support(&self) -> Support {
        Support {
            moved: self
                .images
                .iter()
                .enumerate()
                .filter(|&(i, &x)| i != x)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn support_size(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i != x)
            .count()
    }

    /// `compose(a, b)(i) = a(b(i))`, so `compose(q, p)` is the operator
    /// product `QP` (apply `p` first).
    pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation, PermutationError> {
        if a.n != b.n {
            return Err(PermutationError::WidthMismatch(a.n, b.n));
        }
        Ok(Permutation {
            n: a.n,
            images: b.images.iter().map(|&x| a.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation {
            n: self.n,
            images: inv,
        }
    }

    /// Parses the truth-table text format:
    ///
    /// ```text
    /// n 2
    /// # comment
    /// 1
    /// 0
    /// 3
    /// 2
    /// ```
    ///
    /// or the single-line form `perm: 1 0 3 2` (width inferred from length).
    pub fn parse_truth_table(text: &str) -> Result<Permutation, PermutationError> {
        let mut header: Option<usize> = None;
        let mut images = Vec::new();
        let mut single_line = false;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last_line = lineno;
            let syntax = |message: String| PermutationError::Syntax {
                line: lineno,
                message,
            };
            if single_line {
                return Err(syntax("unexpected content after `perm:` line".into()));
            }
            if header.is_none() && images.is_empty() {
                if let Some(rest) = line.strip_prefix("perm:") {
                    single_line = true;
                    for tok in rest.split_whitespace() {
                        images.push(
                            tok.parse::<usize>()
                                .map_err(|_| syntax(format!("bad image {tok:?}")))?,
                        );
                    }
                    continue;
                }
                let mut toks = line.split_whitespace();
                if toks.next() != Some("n") {
                    return Err(syntax("expected header `n <width>` or `perm:`".into()));
                }
                let n = toks
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| syntax("bad width in header".into()))?;
                if toks.next().is_some() {
                    return Err(syntax("trailing tokens in header".into()));
                }
                check_width(n)?;
                header = Some(n);
                continue;
            }
            let n = header.expect("header parsed");
            if images.len() == 1 << n {
                return Err(syntax(format!("more than {} images", 1usize << n)));
            }
            let value = line
                .parse::<usize>()
                .map_err(|_| syntax(format!("bad image {line:?}")))?;
            images.push(value);
        }
        let n = match header {
            Some(n) => n,
            None if single_line => {
                let len = images.len();
                if len < 2 || !len.is_power_of_two() {
                    return Err(PermutationError::Syntax {
                        line: last_line,
                        message: format!("{len} images is not a power of two ≥ 2"),
                    });
                }
                len.trailing_zeros() as usize
            }
            None => {
                return Err(PermutationError::Syntax {
                    line: 1,
                    message: "empty truth table".into(),
                })
            }
        };
        if images.len() != 1 << n {
            return Err(PermutationError::Syntax {
                line: last_line,
                message: format!("expected {} images, found {}", 1usize << n, images.len()),
            });
        }
        Permutation::from_images(n, images)
    }

    /// Canonical truth-table text: `n <n>` then one image per line.
    pub fn to_truth_table(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for x in &self.images {
            s.push_str(&x.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.len() <= 32 {
            write!(f, "Permutation(n={}, {:?})", self.n, self.images)
        } else {
            write!(f, "Permutation(n={}, |S|={})", self.n, self.support_size())
        }
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_truth_table(s)
    }
}
