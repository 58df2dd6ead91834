import re
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from nonface.models.image import Dataset, GrayImage, LabeledImage
from nonface.utils.logging_config import get_logger

logger = get_logger(__name__)

_WHITESPACE = b" \t\n\r\v\f"
_SUBJECT_DIR = re.compile(r"^s(\d+)$")
_SAMPLE_FILE = re.compile(r"^(\d+)\.pgm$")


class PgmParseError(ValueError):
    """Malformed PGM data; offset is the byte position where parsing failed"""

    def __init__(self, reason: str, offset: int):
        self.reason = reason
        self.offset = offset
        super().__init__(f"{reason} at byte {offset}")


class DatasetError(ValueError):
    """Problem with a face database tree; path names the offending entry"""

    def __init__(self, message: str, path: Union[str, Path]):
        self.path = str(path)
        super().__init__(f"{message}: {self.path}")


class _HeaderReader:
    """Whitespace/comment aware token reader over a PGM header"""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0
        self.last_offset = 0

    def _skip(self) -> None:
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos:self.pos + 1]
            if ch in _WHITESPACE:
                self.pos += 1
            elif ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            else:
                break

    def token(self, what: str) -> Tuple[bytes, int]:
        self._skip()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos:self.pos + 1] not in _WHITESPACE \
                and data[self.pos:self.pos + 1] != b"#":
            self.pos += 1
        if self.pos == start:
            raise PgmParseError(f"unexpected end of header while reading {what}", start)
        return data[start:self.pos], start

    def integer(self, what: str) -> int:
        raw, offset = self.token(what)
        self.last_offset = offset
        if not raw.isdigit():
            raise PgmParseError(f"non-numeric {what} {raw[:16]!r}", offset)
        return int(raw)


class DatasetService:
    @staticmethod
    def parse_pgm(data: bytes) -> GrayImage:
        """Parse a binary (P5) or ASCII (P2) PGM image with maxval ≤ 255"""
        if len(data) < 2:
            raise PgmParseError("file too short for a magic number", 0)
        magic = data[:2]
        if magic not in (b"P5", b"P2"):
            raise PgmParseError(f"unsupported magic {magic!r}", 0)

        reader = _HeaderReader(data)
        reader.pos = 2
        width = reader.integer("width")
        height = reader.integer("height")
        maxval = reader.integer("maxval")
        maxval_offset = reader.last_offset
        if maxval > 255:
            raise PgmParseError(f"maxval {maxval} exceeds 255", maxval_offset)
        if width == 0 or height == 0 or maxval == 0:
            raise PgmParseError("zero width, height or maxval", maxval_offset)

        count = width * height
        if magic == b"P5":
            # Exactly one whitespace byte separates maxval from the raster
            start = reader.pos + 1
            raster = data[start:start + count]
            if len(raster) < count:
                raise PgmParseError(
                    f"truncated raster: expected {count} bytes, found {len(raster)}",
                    start + len(raster),
                )
            pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()
        else:
            values = []
            for _ in range(count):
                try:
                    values.append(reader.integer("pixel value"))
                except PgmParseError as e:
                    if e.reason.startswith("unexpected end"):
                        raise PgmParseError(
                            f"truncated raster: expected {count} values, found {len(values)}",
                            e.offset,
                        )
                    raise
            pixels = np.array(values, dtype=np.int64)
            if pixels.max() > maxval:
                raise PgmParseError(f"pixel value exceeds maxval {maxval}", reader.pos)
            pixels = pixels.astype(np.uint8).reshape(height, width)

        return GrayImage(width=width, height=height, pixels=pixels)

    @staticmethod
    def serialize_pgm(image: GrayImage) -> bytes:
        """Encode as binary P5 with maxval 255"""
        header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
        return header + np.ascontiguousarray(image.pixels, dtype=np.uint8).tobytes()

    @staticmethod
    def read_pgm(path: Union[str, Path]) -> GrayImage:
        """Read and parse a PGM file"""
        return DatasetService.parse_pgm(Path(path).read_bytes())

    @staticmethod
    def _indexed(entries, pattern) -> dict:
        found = {}
        for entry in entries:
            match = pattern.match(entry.name)
            if match:
                found[int(match.group(1))] = entry
        return found

    @staticmethod
    def load_orl(root: Union[str, Path]) -> Dataset:
        """
        Load an ORL-layout tree: <root>/s<subject>/<sample>.pgm

        Subjects and samples are 1-based on disk and 0-based in the Dataset.
        """
        root = Path(root)
        if not root.is_dir():
            raise DatasetError("dataset root is not a directory", root)

        logger.info(f"[cyan]📦 Loading face database from {root}...[/cyan]")

        subjects = DatasetService._indexed(
            (p for p in root.iterdir() if p.is_dir()), _SUBJECT_DIR
        )
        if not subjects:
            raise DatasetError("no subject directories (s1, s2, ...) found", root)
        num_subjects = max(subjects)
        for s in range(1, num_subjects + 1):
            if s not in subjects:
                raise DatasetError("missing subject directory", f"s{s}")

        # Sample count is the highest index in any subject, so a gap anywhere is a missing file
        samples_per_subject = 0
        for s in range(1, num_subjects + 1):
            samples = DatasetService._indexed(
                (p for p in subjects[s].iterdir() if p.is_file()), _SAMPLE_FILE
            )
            if samples:
                samples_per_subject = max(samples_per_subject, max(samples))
        if samples_per_subject == 0:
            raise DatasetError("no sample images found", root)

        images: List[LabeledImage] = []
        shape = None
        for s in range(1, num_subjects + 1):
            for k in range(1, samples_per_subject + 1):
                rel = f"s{s}/{k}.pgm"
                path = root / f"s{s}" / f"{k}.pgm"
                if not path.is_file():
                    raise DatasetError("missing image file", rel)
                try:
                    image = DatasetService.read_pgm(path)
                except PgmParseError as e:
                    raise DatasetError(f"cannot parse image ({e})", rel) from e
                if shape is None:
                    shape = (image.width, image.height)
                elif (image.width, image.height) != shape:
                    raise DatasetError(
                        f"image is {image.width}x{image.height}, expected {shape[0]}x{shape[1]}", rel
                    )
                images.append(LabeledImage(image=image, subject_id=s - 1, sample_index=k - 1))

        dataset = Dataset(
            num_subjects=num_subjects,
            samples_per_subject=samples_per_subject,
            images=images,
        )
        logger.info(
            f"[bold green]✓[/bold green] Loaded {len(images)} images "
            f"({num_subjects} subjects x {samples_per_subject} samples, {shape[0]}x{shape[1]})"
        )
        return dataset

    @staticmethod
    def split_train_test(dataset: Dataset, k: int) -> Tuple[List[LabeledImage], List[LabeledImage]]:
        """First k samples of every subject train, the rest test"""
        if not 0 < k < dataset.samples_per_subject:
            raise ValueError(
                f"train count k={k} must satisfy 0 < k < {dataset.samples_per_subject}"
            )
        train = [item for item in dataset.images if item.sample_index < k]
        test = [item for item in dataset.images if item.sample_index >= k]
        return train, test
