//! Tool verification by comparing the changed region of two depth images
//! against the expected tool's silhouette.

use thiserror::Error;

use crate::scalar::Scalar;

/// Row-major depth image, values in millimeters.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthGrid<T> {
    width: usize,
    height: usize,
    depth_mm: Vec<T>,
}

impl<T: Scalar> DepthGrid<T> {
    pub fn new(width: usize, height: usize, depth_mm: Vec<T>) -> Result<Self, ToolError> {
        if depth_mm.len() != width * height {
            return Err(ToolError::BadBuffer { expected: width * height, got: depth_mm.len() });
        }
        Ok(Self { width, height, depth_mm })
    }

    pub fn filled(width: usize, height: usize, value: T) -> Self {
        Self { width, height, depth_mm: vec![value; width * height] }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn set(&mut self, x: usize, y: usize, value: T) {
        self.depth_mm[y * self.width + x] = value;
    }

    pub fn values(&self) -> &[T] {
        &self.depth_mm
    }
}

/// Row-major boolean silhouette of a tool.
#[derive(Debug, Clone, PartialEq)]
pub struct ToolShape {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl ToolShape {
    pub fn new(width: usize, height: usize, mask: Vec<bool>) -> Result<Self, ToolError> {
        if mask.len() != width * height {
            return Err(ToolError::BadBuffer { expected: width * height, got: mask.len() });
        }
        Ok(Self { width, height, mask })
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Self { width, height, mask: vec![false; width * height] }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn set(&mut self, x: usize, y: usize, on: bool) {
        self.mask[y * self.width + x] = on;
    }

    pub fn cells(&self) -> &[bool] {
        &self.mask
    }

    pub fn count(&self) -> usize {
        self.mask.iter().filter(|c| **c).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToolError {
    #[error("grid dimensions differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("buffer has {got} cells, expected {expected}")]
    BadBuffer { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signal {
    Green,
    Red,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToolCheck<T> {
    /// Minimum depth change (mm) for a cell to count as changed.
    pub depth_delta: T,
    /// Minimum intersection-over-union for a match, in [0, 1].
    pub threshold: T,
}

impl<T: Scalar> Default for ToolCheck<T> {
    fn default() -> Self {
        Self { depth_delta: T::lit(30.0), threshold: T::lit(0.7) }
    }
}

/// Cells whose depth changed by more than `depth_delta`.
pub fn difference_mask<T: Scalar>(
    before: &DepthGrid<T>,
    during: &DepthGrid<T>,
    depth_delta: T,
) -> Result<ToolShape, ToolError> {
    if before.dims() != during.dims() {
        return Err(ToolError::DimensionMismatch(before.dims(), during.dims()));
    }
    let mask = before
        .values()
        .iter()
        .zip(during.values())
        .map(|(b, d)| (*d - *b).abs() > depth_delta)
        .collect();
    let (w, h) = before.dims();
    Ok(ToolShape { width: w, height: h, mask })
}

/// Intersection-over-union of two masks; 0 when both are empty.
pub fn mask_iou<T: Scalar>(a: &ToolShape, b: &ToolShape) -> Result<T, ToolError> {
    if a.dims() != b.dims() {
        return Err(ToolError::DimensionMismatch(a.dims(), b.dims()));
    }
    let (inter, union) = a.cells().iter().zip(b.cells()).fold((0usize, 0usize), |(i, u), (x, y)| {
        (i + usize::from(*x && *y), u + usize::from(*x || *y))
    });
    if union == 0 {
        return Ok(T::zero());
    }
    Ok(T::from_usize(inter).unwrap() / T::from_usize(union).unwrap())
}

/// Green iff the changed region matches the tool silhouette well enough.
pub fn verify_tool<T: Scalar>(
    before: &DepthGrid<T>,
    during: &DepthGrid<T>,
    template: &ToolShape,
    check: &ToolCheck<T>,
) -> Result<Signal, ToolError> {
    let diff = difference_mask(before, during, check.depth_delta)?;
    let similarity: T = mask_iou(&diff, template)?;
    Ok(if similarity >= check.threshold { Signal::Green } else { Signal::Red })
}
