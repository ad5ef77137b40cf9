use std::collections::BTreeMap;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fields::axis::{Axis, AxisLabel};

pub const MAX_RANK: usize = 4;

/// A dense complex field sampled on a tensor product of uniform axes.
///
/// Values are stored row-major in axis order. Real-valued fields carry a zero
/// imaginary part. Fields are immutable values in practice: every operation
/// returns a new field.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    axes: Vec<Axis>,
    values: Vec<C64>,
    pub metadata: BTreeMap<String, String>,
}

impl Field {
    pub fn new(axes: Vec<Axis>, values: Vec<C64>) -> Result<Self> {
        if axes.len() > MAX_RANK {
            return Err(Error::domain(format!(
                "rank {} exceeds supported maximum {MAX_RANK}",
                axes.len()
            )));
        }
        let expected: usize = axes.iter().map(|a| a.count).product();
        if values.len() != expected {
            return Err(Error::domain(format!(
                "value count {} does not match grid size {expected}",
                values.len()
            )));
        }
        for a in &axes {
            a.validate()?;
        }
        Ok(Field { axes, values, metadata: BTreeMap::new() })
    }

    pub fn zeros(axes: Vec<Axis>) -> Result<Self> {
        let n: usize = axes.iter().map(|a| a.count).product();
        Field::new(axes, vec![C64::new(0.0, 0.0); n])
    }

    /// Sample a scalar function of the grid coordinates.
    pub fn from_fn<F: FnMut(&[f64]) -> C64>(axes: Vec<Axis>, mut f: F) -> Result<Self> {
        let mut field = Field::zeros(axes)?;
        let rank = field.rank();
        let mut coords = vec![0.0; rank];
        let mut idx = vec![0usize; rank];
        for flat in 0..field.values.len() {
            field.unravel(flat, &mut idx);
            for (d, &i) in idx.iter().enumerate() {
                coords[d] = field.axes[d].at(i);
            }
            field.values[flat] = f(&coords);
        }
        Ok(field)
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.count).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn with_metadata(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Index of the axis carrying `label` (mode 0).
    pub fn axis_index(&self, label: AxisLabel) -> Result<usize> {
        self.axis_index_mode(label, 0)
    }

    pub fn axis_index_mode(&self, label: AxisLabel, mode: u8) -> Result<usize> {
        self.axes
            .iter()
            .position(|a| a.label == label && a.mode == mode)
            .ok_or_else(|| {
                Error::domain(format!(
                    "field has no {} axis for mode {mode}",
                    label.name()
                ))
            })
    }

    pub fn axis(&self, label: AxisLabel) -> Result<&Axis> {
        Ok(&self.axes[self.axis_index(label)?])
    }

    /// Row-major stride of axis `d`.
    pub fn stride(&self, d: usize) -> usize {
        self.axes[d + 1..].iter().map(|a| a.count).product()
    }

    #[inline]
    pub fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        for d in (0..self.axes.len()).rev() {
            let n = self.axes[d].count;
            idx[d] = flat % n;
            flat /= n;
        }
    }

    #[inline]
    pub fn ravel(&self, idx: &[usize]) -> usize {
        let mut flat = 0;
        for (d, &i) in idx.iter().enumerate() {
            flat = flat * self.axes[d].count + i;
        }
        flat
    }

    pub fn at(&self, idx: &[usize]) -> C64 {
        self.values[self.ravel(idx)]
    }

    /// Visit every 1-D lane along `axis`: `body(lane_start_flat, stride)`.
    ///
    /// Lane element `i` lives at `lane_start_flat + i * stride`.
    pub fn for_each_lane<F: FnMut(usize, usize)>(&self, axis: usize, mut body: F) {
        let stride = self.stride(axis);
        let n = self.axes[axis].count;
        let outer: usize = self.axes[..axis].iter().map(|a| a.count).product();
        let inner = stride;
        for o in 0..outer {
            for i in 0..inner {
                body(o * n * stride + i, stride);
            }
        }
    }

    /// Number of lanes along `axis`.
    pub fn lane_count(&self, axis: usize) -> usize {
        self.values.len() / self.axes[axis].count
    }

    pub fn map_values<F: FnMut(C64) -> C64>(&self, mut f: F) -> Field {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = f(*v);
        }
        out
    }

    pub fn scaled(&self, s: C64) -> Field {
        self.map_values(|v| v * s)
    }

    pub fn real_scaled(&self, s: f64) -> Field {
        self.map_values(|v| v * s)
    }

    /// Element-wise sum; grids must match exactly.
    pub fn add(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other)?;
        let mut out = self.clone();
        for (v, o) in out.values.iter_mut().zip(other.values.iter()) {
            *v += *o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.check_same_grid(other)?;
        let mut out = self.clone();
        for (v, o) in out.values.iter_mut().zip(other.values.iter()) {
            *v -= *o;
        }
        Ok(out)
    }

    pub fn check_same_grid(&self, other: &Field) -> Result<()> {
        if self.axes != other.axes {
            return Err(Error::domain("fields live on different grids".to_string()));
        }
        Ok(())
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Grid-weighted L2 norm: sqrt(Σ|f|² Πdx).
    pub fn l2_norm(&self) -> f64 {
        let w: f64 = self.axes.iter().map(|a| a.step).product();
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    pub fn sup_distance(&self, other: &Field) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn l2_distance(&self, other: &Field) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.l2_norm())
    }

    pub fn max_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Largest negative excursion of the real part (0 when nonnegative).
    pub fn max_negative(&self) -> f64 {
        self.values.iter().map(|v| (-v.re).max(0.0)).fold(0.0, f64::max)
    }

    /// Tensor product `self ⊗ other` (axes concatenated in order).
    pub fn tensor_product(&self, other: &Field) -> Result<Field> {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Field::new(axes, values)
    }

    /// Validate the `probability` contract: nonnegative real part up to `tol`
    /// and unit marginal along X for every slice.
    pub fn validate_probability(&self, tol: f64) -> Result<()> {
        let neg = self.max_negative();
        if neg > tol {
            return Err(Error::contract(format!(
                "probability field has negative excursion {neg:.3e} > {tol:.1e}"
            )));
        }
        let im = self.max_imag();
        if im > tol {
            return Err(Error::contract(format!(
                "probability field has imaginary part {im:.3e} > {tol:.1e}"
            )));
        }
        let worst = self.normalization_residual()?;
        if worst > tol {
            return Err(Error::contract(format!(
                "X-marginal deviates from 1 by {worst:.3e} > {tol:.1e}"
            )));
        }
        Ok(())
    }

    /// max over slices of |∫f dX − 1| for every X axis present.
    pub fn normalization_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        let mut found = false;
        for (d, ax) in self.axes.iter().enumerate() {
            if ax.label != AxisLabel::X {
                continue;
            }
            found = true;
            let stride = self.stride(d);
            let n = ax.count;
            let outer: usize = self.axes[..d].iter().map(|a| a.count).product();
            for o in 0..outer {
                for i in 0..stride {
                    let base = o * n * stride + i;
                    let mut s = C64::new(0.0, 0.0);
                    for j in 0..n {
                        s += self.values[base + j * stride];
                    }
                    worst = worst.max((s * ax.step - 1.0).norm());
                }
            }
        }
        if !found {
            return Err(Error::domain("field has no X axis".to_string()));
        }
        Ok(worst)
    }

    /// Tag the field as a probability distribution after validating it.
    pub fn into_probability(mut self, tol: f64) -> Result<Field> {
        self.validate_probability(tol)?;
        self.metadata.insert("probability".to_string(), "true".to_string());
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::axis::{default_theta_axis, default_x_axis};
    use std::f64::consts::PI;

    #[test]
    fn ravel_roundtrip() {
        let f = Field::zeros(vec![default_x_axis(), default_theta_axis()]).unwrap();
        let mut idx = vec![0usize; 2];
        for flat in [0usize, 1, 63, 64, 12345] {
            f.unravel(flat, &mut idx);
            assert_eq!(f.ravel(&idx), flat);
        }
    }

    #[test]
    fn vacuum_tomogram_is_probability() {
        let axes = vec![default_x_axis(), default_theta_axis()];
        let f = Field::from_fn(axes, |c| {
            C64::new((-c[0] * c[0]).exp() / PI.sqrt(), 0.0)
        })
        .unwrap();
        f.validate_probability(1e-9).unwrap();
    }

    #[test]
    fn mismatched_values_rejected() {
        assert!(Field::new(vec![default_x_axis()], vec![C64::new(0.0, 0.0); 3]).is_err());
    }

    #[test]
    fn tensor_product_shapes() {
        let a = Field::from_fn(vec![default_x_axis()], |c| C64::new(c[0], 0.0)).unwrap();
        let b = Field::from_fn(vec![default_theta_axis()], |c| C64::new(c[0].cos(), 0.0)).unwrap();
        let t = a.tensor_product(&b).unwrap();
        assert_eq!(t.shape(), vec![256, 64]);
        let x = t.axes()[0].at(10);
        let th = t.axes()[1].at(5);
        assert!((t.at(&[10, 5]).re - x * th.cos()).abs() < 1e-15);
    }
}
