"""Windowed STFT / inverse STFT with exact weighted overlap-add reconstruction.

Frames are centered: frame t covers samples around t * hop, with zero padding
at both edges. Inversion uses the squared-window normalization buffer, so any
hop <= window length reconstructs exactly (up to float rounding) over the
region the windows cover.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from drumaug.audio import AudioClip


class ColaError(Exception):
    """Window/hop pair cannot be inverted by overlap-add."""


def _next_pow2(n: int) -> int:
    return 1 << (int(n) - 1).bit_length()


@dataclass(frozen=True)
class StftConfig:
    """Analysis window/hop in seconds plus the FFT size policy."""

    window_size: float
    hop_size: float
    window_kind: str = "hann"
    fft_size: int | None = None  # None: next power of two >= window samples

    def __post_init__(self):
        if self.window_size <= 0 or self.hop_size <= 0:
            raise ValueError("window_size and hop_size must be positive")
        if self.hop_size > self.window_size:
            raise ValueError("hop_size must not exceed window_size")
        if self.window_kind != "hann":
            raise ValueError(f"unsupported window kind {self.window_kind!r}")

    @classmethod
    def from_samples(cls, window: int, hop: int, sample_rate: int,
                     fft_size: int | None = None) -> "StftConfig":
        return cls(window / sample_rate, hop / sample_rate, fft_size=fft_size)

    def window_samples(self, sample_rate: int) -> int:
        n = int(round(self.window_size * sample_rate))
        return max(n, 1)

    def hop_samples(self, sample_rate: int) -> int:
        n = int(round(self.hop_size * sample_rate))
        return max(n, 1)

    def fft_samples(self, sample_rate: int) -> int:
        win = self.window_samples(sample_rate)
        if self.fft_size is None:
            return _next_pow2(win)
        if self.fft_size < win:
            raise ValueError(f"fft_size {self.fft_size} < window of {win} samples")
        return self.fft_size

    def window(self, sample_rate: int) -> np.ndarray:
        # periodic Hann; satisfies weighted overlap-add for any hop <= window
        n = self.window_samples(sample_rate)
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class SpectralFrameSequence:
    """Complex STFT frames (T x K) plus the metadata needed to invert them."""

    frames: np.ndarray
    config: StftConfig
    origin_sample_rate: int
    n_samples: int

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]

    @property
    def n_bins(self) -> int:
        return self.frames.shape[1]

    def magnitudes(self) -> np.ndarray:
        return np.abs(self.frames)

    def phases(self) -> np.ndarray:
        return np.angle(self.frames)

    def with_frames(self, frames: np.ndarray) -> "SpectralFrameSequence":
        if frames.shape != self.frames.shape:
            raise ValueError("frame array shape must be preserved")
        return SpectralFrameSequence(frames, self.config, self.origin_sample_rate,
                                     self.n_samples)

    def frame_time(self, index: int) -> float:
        return index * self.config.hop_samples(self.origin_sample_rate) \
            / self.origin_sample_rate

    def bin_frequency(self, k) -> np.ndarray:
        fft = self.config.fft_samples(self.origin_sample_rate)
        return np.asarray(k) * self.origin_sample_rate / fft


def frame_count(n_samples: int, hop: int) -> int:
    """Number of centered frames: ceil(n / hop)."""
    return -(-n_samples // hop)


def stft(clip: AudioClip, cfg: StftConfig) -> SpectralFrameSequence:
    """Centered short-time Fourier transform of a clip."""
    sr = clip.sample_rate
    win = cfg.window_samples(sr)
    hop = cfg.hop_samples(sr)
    nfft = cfg.fft_samples(sr)
    x = clip.samples
    if len(x) == 0:
        raise ValueError("cannot analyze an empty clip")

    n_frames = frame_count(len(x), hop)
    half = win // 2
    pad_right = (n_frames - 1) * hop + win - half - len(x)
    padded = np.pad(x, (half, max(pad_right, 0)))

    w = cfg.window(sr)
    starts = np.arange(n_frames) * hop
    idx = starts[:, None] + np.arange(win)[None, :]
    segments = padded[idx] * w[None, :]
    frames = np.fft.rfft(segments, n=nfft, axis=1)
    return SpectralFrameSequence(frames, cfg, sr, len(x))


def istft(seq: SpectralFrameSequence) -> AudioClip:
    """Weighted overlap-add inversion back to the original length."""
    sr = seq.origin_sample_rate
    cfg = seq.config
    win = cfg.window_samples(sr)
    hop = cfg.hop_samples(sr)
    nfft = cfg.fft_samples(sr)
    if seq.frames.shape[1] != nfft // 2 + 1:
        raise ValueError("bin count does not match the config's FFT size")

    w = cfg.window(sr)
    half = win // 2
    n_frames = seq.n_frames
    total = (n_frames - 1) * hop + win

    segments = np.fft.irfft(seq.frames, n=nfft, axis=1)[:, :win] * w[None, :]
    out = np.zeros(total)
    norm = np.zeros(total)
    w2 = w * w
    for t in range(n_frames):
        start = t * hop
        out[start:start + win] += segments[t]
        norm[start:start + win] += w2

    lo, hi = half, half + seq.n_samples
    out = out[lo:hi]
    norm = norm[lo:hi]
    if norm.size and float(norm.min()) <= 1e-10:
        raise ColaError(
            f"window of {win} samples with hop {hop} leaves gaps in coverage")
    out = out / norm
    if len(out) < seq.n_samples:
        out = np.pad(out, (0, seq.n_samples - len(out)))
    return AudioClip(out, sr)
