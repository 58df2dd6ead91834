import numpy as np
import pytest

from nonface.models.image import GrayImage
from nonface.models.transform import DctBlock
from nonface.services.transform_service import TransformService


def naive_dct2d(tile: np.ndarray) -> np.ndarray:
    """Direct evaluation of the orthonormal DCT-II definition, no separability"""
    n = tile.shape[0]
    k = np.arange(n)
    alpha = np.where(k == 0, np.sqrt(1.0 / n), np.sqrt(2.0 / n))
    # cos[(2x+1)uπ/2n] for every (u, x)
    cos = np.cos((2 * k[None, :] + 1) * k[:, None] * np.pi / (2 * n))
    basis = np.einsum("ux,vy->uvxy", cos, cos) * np.outer(alpha, alpha)[:, :, None, None]
    return np.einsum("uvxy,xy->uv", basis, tile)


def random_image(rng, width, height) -> GrayImage:
    return GrayImage.from_array(rng.integers(0, 256, size=(height, width), dtype=np.uint8))


class TestPadding:
    def test_orl_width_padded(self, rng):
        image = random_image(rng, 92, 112)
        padded = TransformService.zero_pad(image, 8)
        assert (padded.width, padded.height) == (96, 112)
        assert np.all(padded.pixels[:, 92:] == 0)
        np.testing.assert_array_equal(padded.pixels[:, :92], image.pixels)

    def test_divisible_unchanged(self, rng):
        image = random_image(rng, 96, 112)
        assert TransformService.zero_pad(image, 8) == image

    def test_large_blocks(self, rng):
        padded = TransformService.zero_pad(random_image(rng, 92, 112), 32)
        assert (padded.width, padded.height) == (96, 128)
        assert TransformService.partition_blocks(padded, 32).count == 12

    def test_crop(self, rng):
        cropped = TransformService.crop_to_blocks(random_image(rng, 92, 112), 8)
        assert (cropped.width, cropped.height) == (88, 112)

    def test_bad_block_size(self, rng):
        with pytest.raises(ValueError, match="power of two"):
            TransformService.zero_pad(random_image(rng, 16, 16), 12)


class TestPartition:
    def test_sixteen(self, rng):
        grid = TransformService.partition_blocks(random_image(rng, 96, 112), 16)
        assert (grid.blocks_x, grid.blocks_y, grid.count) == (6, 7, 42)

    def test_thirty_two(self, rng):
        grid = TransformService.partition_blocks(random_image(rng, 96, 128), 32)
        assert (grid.blocks_x, grid.blocks_y) == (3, 4)

    def test_single_block(self, rng):
        image = random_image(rng, 8, 8)
        grid = TransformService.partition_blocks(image, 8)
        assert grid.count == 1
        np.testing.assert_array_equal(grid.tiles()[0], image.pixels)

    def test_row_major_order(self):
        pixels = np.kron(np.arange(6).reshape(2, 3), np.ones((8, 8))).astype(np.uint8)
        grid = TransformService.partition_blocks(GrayImage.from_array(pixels), 8)
        assert [int(t[0, 0]) for t in grid.tiles()] == [0, 1, 2, 3, 4, 5]

    def test_reassembly(self, rng):
        image = TransformService.zero_pad(random_image(rng, 92, 112), 16)
        grid = TransformService.partition_blocks(image, 16)
        assert TransformService.reassemble_blocks(grid) == image

    def test_requires_divisible(self, rng):
        with pytest.raises(ValueError, match="pad or crop"):
            TransformService.partition_blocks(random_image(rng, 92, 112), 8)


class TestDct:
    def test_constant_tile(self):
        block = TransformService.dct2d(np.full((8, 8), 128.0))
        assert block.coeffs[0] == pytest.approx(1024.0, abs=1e-9)
        np.testing.assert_allclose(block.ac, 0.0, atol=1e-9)

    def test_zero_tile(self):
        block = TransformService.dct2d(np.zeros((8, 8)))
        assert np.all(block.coeffs == 0)
        assert np.all(TransformService.idct2d(block) == 0)

    def test_dc_only_inverse(self):
        coeffs = np.zeros(64)
        coeffs[0] = 1024.0
        tile = TransformService.idct2d(DctBlock(n=8, coeffs=coeffs))
        np.testing.assert_allclose(tile, 128.0, atol=1e-9)

    @pytest.mark.parametrize("n", [8, 16, 32])
    def test_matches_definition(self, rng, n):
        for _ in range(100):
            tile = rng.uniform(0, 255, size=(n, n))
            block = TransformService.dct2d(tile)
            np.testing.assert_allclose(block.coeffs.reshape(n, n), naive_dct2d(tile), rtol=0, atol=1e-9)

    def test_round_trip_and_parseval(self, rng):
        for i in range(1000):
            n = (8, 16, 32)[i % 3]
            tile = rng.uniform(0, 255, size=(n, n))
            block = TransformService.dct2d(tile)
            np.testing.assert_allclose(TransformService.idct2d(block), tile, rtol=0, atol=1e-9)
            assert np.sum(block.coeffs ** 2) == pytest.approx(np.sum(tile ** 2), rel=1e-10)

    def test_linearity(self, rng):
        for _ in range(50):
            t1, t2 = rng.uniform(0, 255, size=(2, 16, 16))
            a, b = rng.uniform(-3, 3, size=2)
            combined = TransformService.dct2d(a * t1 + b * t2).coeffs
            separate = a * TransformService.dct2d(t1).coeffs + b * TransformService.dct2d(t2).coeffs
            np.testing.assert_allclose(combined, separate, rtol=1e-9, atol=1e-9)

    def test_batched_agrees(self, rng):
        tiles = rng.uniform(0, 255, size=(5, 8, 8))
        batched = TransformService.dct_blocks(tiles)
        for tile, coeffs in zip(tiles, batched):
            np.testing.assert_allclose(TransformService.dct2d(tile).coeffs, coeffs.ravel(), rtol=0, atol=1e-9)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            TransformService.dct2d(np.zeros((8, 16)))
