"""
Two-level network-of-networks face recognizer

Level 1 compacts every block-DCT spectrum of a face image into one coefficient;
Level 2 is a backpropagation network that classifies the resulting vector.
"""
__version__ = "1.0.0"
