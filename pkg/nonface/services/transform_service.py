import numpy as np
from scipy.fft import dctn, idctn

from nonface.models.image import GrayImage
from nonface.models.transform import BlockGrid, DctBlock, check_block_size


class TransformService:
    @staticmethod
    def zero_pad(image: GrayImage, n: int) -> GrayImage:
        """Pad right and bottom with zeros up to the next multiple of n"""
        check_block_size(n)
        height = -(-image.height // n) * n
        width = -(-image.width // n) * n
        if (height, width) == (image.height, image.width):
            return image
        padded = np.zeros((height, width), dtype=image.pixels.dtype)
        padded[:image.height, :image.width] = image.pixels
        return GrayImage(width=width, height=height, pixels=padded)

    @staticmethod
    def crop_to_blocks(image: GrayImage, n: int) -> GrayImage:
        """Crop right and bottom down to the largest multiple of n"""
        check_block_size(n)
        height = (image.height // n) * n
        width = (image.width // n) * n
        if height == 0 or width == 0:
            raise ValueError(f"{image.width}x{image.height} image is smaller than one {n}x{n} block")
        if (height, width) == (image.height, image.width):
            return image
        return GrayImage(width=width, height=height, pixels=image.pixels[:height, :width].copy())

    @staticmethod
    def partition_blocks(image: GrayImage, n: int) -> BlockGrid:
        """Cut an image whose sides divide by n into row-major n x n tiles"""
        check_block_size(n)
        if image.width % n or image.height % n:
            raise ValueError(
                f"{image.width}x{image.height} image does not divide into {n}x{n} blocks; pad or crop first"
            )
        blocks_y, blocks_x = image.height // n, image.width // n
        blocks = (
            image.pixels.reshape(blocks_y, n, blocks_x, n)
            .swapaxes(1, 2)
            .copy()
        )
        return BlockGrid(blocks_x=blocks_x, blocks_y=blocks_y, n=n, blocks=blocks)

    @staticmethod
    def reassemble_blocks(grid: BlockGrid) -> GrayImage:
        """Inverse of partition_blocks"""
        n = grid.n
        pixels = grid.blocks.swapaxes(1, 2).reshape(grid.blocks_y * n, grid.blocks_x * n)
        return GrayImage.from_array(pixels.copy())

    @staticmethod
    def dct_blocks(tiles: np.ndarray) -> np.ndarray:
        """Orthonormal 2-D DCT-II over the last two axes of a tile stack"""
        return dctn(np.asarray(tiles, dtype=np.float64), type=2, norm="ortho", axes=(-2, -1))

    @staticmethod
    def dct2d(tile: np.ndarray) -> DctBlock:
        """Orthonormal 2-D DCT-II of one n x n tile, flattened in raster-scan order"""
        tile = np.asarray(tile, dtype=np.float64)
        if tile.ndim != 2 or tile.shape[0] != tile.shape[1]:
            raise ValueError(f"tile must be square, got shape {tile.shape}")
        coeffs = TransformService.dct_blocks(tile)
        return DctBlock(n=tile.shape[0], coeffs=coeffs.ravel())

    @staticmethod
    def idct2d(block: DctBlock) -> np.ndarray:
        """Inverse of dct2d, returning an n x n tile"""
        return idctn(block.coeffs.reshape(block.n, block.n), type=2, norm="ortho")
