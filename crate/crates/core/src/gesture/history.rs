use std::collections::VecDeque;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::skeleton::{JointId, SkeletonFrame};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HistoryError {
    #[error("non-monotone timestamp: {got} is not after {newest}")]
    NonMonotone { newest: String, got: String },
    #[error("frame at t={timestamp} is missing joint {joint}")]
    IncompleteFrame { timestamp: String, joint: JointId },
}

/// Bounded, chronological buffer of the most recent frames (oldest first).
#[derive(Debug, Clone)]
pub struct FrameHistory<T> {
    capacity: usize,
    entries: VecDeque<SkeletonFrame<T>>,
    pub(crate) last_detection_time: Option<T>,
}

impl<T: Scalar> FrameHistory<T> {
    /// Panics if `capacity` is zero.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "history capacity must be positive");
        Self { capacity, entries: VecDeque::with_capacity(capacity), last_detection_time: None }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn newest(&self) -> Option<&SkeletonFrame<T>> {
        self.entries.back()
    }

    pub fn get(&self, i: usize) -> Option<&SkeletonFrame<T>> {
        self.entries.get(i)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = &SkeletonFrame<T>> + ExactSizeIterator {
        self.entries.iter()
    }

    pub fn last_detection_time(&self) -> Option<T> {
        self.last_detection_time
    }

    /// The newest `len` frames, oldest first, or `None` if fewer are stored.
    pub fn tail(&self, len: usize) -> Option<impl Iterator<Item = &SkeletonFrame<T>> + Clone> {
        let n = self.entries.len();
        (len <= n).then(|| self.entries.range(n - len..))
    }

    /// Appends a frame, evicting the oldest entry when full.
    pub fn push_frame(&mut self, frame: SkeletonFrame<T>) -> Result<(), HistoryError> {
        if let Some(newest) = self.entries.back() {
            if frame.timestamp <= newest.timestamp {
                return Err(HistoryError::NonMonotone {
                    newest: newest.timestamp.to_string(),
                    got: frame.timestamp.to_string(),
                });
            }
        }
        if let Some(joint) = JointId::ALL.into_iter().find(|j| frame.get(*j).is_none()) {
            return Err(HistoryError::IncompleteFrame { timestamp: frame.timestamp.to_string(), joint });
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back(frame);
        Ok(())
    }

    pub fn clear(&mut self) {
        self.entries.clear();
        self.last_detection_time = None;
    }
}
