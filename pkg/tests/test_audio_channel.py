from __future__ import annotations

import math
import random
import wave

import numpy as np
import pytest

from cinemood.audio_channel import (
    AudioClip,
    classify_clip_with_stub,
    load_label_file,
    load_wav,
    partition_clip,
    prevalence_scores,
    stub_classify,
)
from cinemood.emotions import Emotion, EmotionProfile
from . import oracles


def clip_of(samples, rate=16000) -> AudioClip:
    return AudioClip(sample_rate=rate, samples=np.asarray(samples, dtype=np.float64))


def write_wav(path, samples: np.ndarray, rate=16000, channels=1):
    pcm = np.clip(samples * 32767.0, -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wf:
        wf.setnchannels(channels)
        wf.setsampwidth(2)
        wf.setframerate(rate)
        wf.writeframes(pcm.tobytes())


class TestPartitionClip:
    def test_thirty_seconds_into_ten_equal_segments(self):
        clip = clip_of(np.zeros(30 * 16000))
        segments = partition_clip(clip, 10)
        assert len(segments) == 10
        assert all(s.duration == pytest.approx(3.0) for s in segments)

    def test_remainder_spread_over_first_segments(self):
        clip = clip_of(np.arange(10, dtype=float))
        sizes = [len(s.samples) for s in partition_clip(clip, 3)]
        assert sizes == [4, 3, 3]

    def test_concatenation_reproduces_clip_exactly(self):
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randint(5, 4000)
            parts = rng.randint(1, min(n, 13))
            clip = clip_of(np.random.default_rng(rng.randrange(2**32)).normal(size=n))
            segments = partition_clip(clip, parts)
            glued = np.concatenate([s.samples for s in segments])
            assert np.array_equal(glued, clip.samples)
            sizes = {len(s.samples) for s in segments}
            assert max(sizes) - min(sizes) <= 1

    def test_too_short_clip_rejected(self):
        with pytest.raises(ValueError, match="too short"):
            partition_clip(clip_of(np.zeros(5)), 10)


class TestPrevalenceScores:
    def test_all_sad_labels(self):
        assert prevalence_scores([3] * 10).as_dict() == {
            "Happy": 0.0,
            "Angry": 0.0,
            "Surprise": 0.0,
            "Sad": 1.0,
            "Fear": 0.0,
        }

    def test_single_class_happy(self):
        assert prevalence_scores([2] * 10).score(Emotion.HAPPY) == 1.0

    def test_hand_counted_thirds(self):
        p = prevalence_scores([4, 3, 5, 0, 0, 0, 1, 4, 3, 5])
        assert p.as_dict() == {
            "Happy": 0.0,
            "Angry": 1 / 3,
            "Surprise": 0.0,
            "Sad": 1 / 3,
            "Fear": 1 / 3,
        }

    def test_all_discarded_degenerates(self):
        p = prevalence_scores([0, 1, 6, 0, 1, 6])
        assert p == EmotionProfile() and p.is_zero

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            prevalence_scores([])

    def test_invalid_code_rejected(self):
        with pytest.raises(ValueError, match="9"):
            prevalence_scores([2, 9])

    def test_permutation_invariance(self):
        rng = random.Random(12)
        labels = [rng.randrange(8) for _ in range(10)]
        labels = labels if any(c in (2, 3, 4, 5, 7) for c in labels) else labels + [2]
        shuffled = labels[:]
        rng.shuffle(shuffled)
        assert prevalence_scores(labels) == prevalence_scores(shuffled)

    def test_appending_discarded_codes_never_changes_profile(self):
        rng = random.Random(13)
        for _ in range(50):
            labels = [rng.choice([2, 3, 4, 5, 7]) for _ in range(rng.randint(1, 10))]
            noise = [rng.choice([0, 1, 6]) for _ in range(rng.randint(0, 6))]
            assert prevalence_scores(labels) == prevalence_scores(labels + noise)

    def test_1000_random_lists_match_counting_oracle(self):
        rng = random.Random(14)
        for _ in range(1000):
            labels = [rng.randrange(8) for _ in range(rng.randint(1, 12))]
            assert prevalence_scores(labels).as_dict() == oracles.prevalence_oracle(labels)

    def test_scores_are_small_integer_ratios(self):
        rng = random.Random(15)
        for _ in range(200):
            labels = [rng.randrange(8) for _ in range(10)]
            kept = sum(1 for c in labels if c in (2, 3, 4, 5, 7))
            p = prevalence_scores(labels)
            if kept == 0:
                assert p.is_zero
                continue
            total = 0.0
            for v in p.as_dict().values():
                k = v * kept
                assert k == pytest.approx(round(k), abs=1e-9)
                total += v
            assert total == pytest.approx(1.0, abs=1e-9)


class TestStubClassify:
    def test_digital_silence_is_sad(self):
        assert stub_classify(clip_of(np.zeros(1000))) == 3

    def test_full_scale_white_noise_is_angry(self):
        rng = np.random.default_rng(99)
        noise = rng.uniform(-1.0, 1.0, size=16000)
        assert stub_classify(clip_of(noise)) == 4

    def test_loud_pure_tone_is_happy(self):
        t = np.arange(16000) / 16000
        tone = 0.9 * np.sin(2 * math.pi * 80 * t)  # loud, few zero crossings
        assert stub_classify(clip_of(tone)) == 2

    def test_deterministic(self):
        rng = np.random.default_rng(100)
        seg = clip_of(rng.normal(scale=0.1, size=3000))
        assert stub_classify(seg) == stub_classify(seg)

    def test_classify_clip_partitions_then_labels(self):
        clip = clip_of(np.zeros(16000))
        labels = classify_clip_with_stub(clip, 10)
        assert labels == [3] * 10


class TestWavLoading:
    def test_mono_round_trip(self, tmp_path):
        samples = np.linspace(-0.5, 0.5, 800)
        write_wav(tmp_path / "m.wav", samples)
        clip = load_wav(tmp_path / "m.wav")
        assert clip.sample_rate == 16000
        assert len(clip.samples) == 800
        assert np.allclose(clip.samples, samples, atol=2 / 32768)

    def test_stereo_averaged_to_mono(self, tmp_path):
        left = np.full(100, 0.5)
        right = np.full(100, -0.5)
        interleaved = np.empty(200)
        interleaved[0::2] = left
        interleaved[1::2] = right
        write_wav(tmp_path / "s.wav", interleaved, channels=2)
        clip = load_wav(tmp_path / "s.wav")
        assert len(clip.samples) == 100
        assert np.allclose(clip.samples, 0.0, atol=1 / 32768)

    def test_wrong_sample_width_rejected(self, tmp_path):
        with wave.open(str(tmp_path / "b.wav"), "wb") as wf:
            wf.setnchannels(1)
            wf.setsampwidth(1)
            wf.setframerate(8000)
            wf.writeframes(b"\x00" * 100)
        with pytest.raises(ValueError, match="16-bit"):
            load_wav(tmp_path / "b.wav")


class TestLabelFile:
    def test_load(self, tmp_path):
        (tmp_path / "labels.json").write_text("[4, 4, 3, 3, 5, 5, 0, 0, 0, 1]")
        assert load_label_file(tmp_path / "labels.json") == [4, 4, 3, 3, 5, 5, 0, 0, 0, 1]

    def test_invalid_code(self, tmp_path):
        (tmp_path / "labels.json").write_text("[4, 9]")
        with pytest.raises(ValueError, match="9"):
            load_label_file(tmp_path / "labels.json")

    def test_non_array(self, tmp_path):
        (tmp_path / "labels.json").write_text("{\"a\": 1}")
        with pytest.raises(ValueError):
            load_label_file(tmp_path / "labels.json")
