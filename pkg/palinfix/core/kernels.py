# palinfix/core/kernels.py
"""numba kernels over int64 letter arrays.

All kernels release the GIL so suite workers running in threads can
overlap their oracle scans.
"""

import numpy as np
from numba import njit


@njit(nogil=True)
def palindromic_radii(letters):
    """Manacher sweep.

    Returns ``(odd, even)``: ``odd[i]`` is the number of odd palindromes
    centred at ``i`` (so the longest one has length ``2*odd[i]-1``) and
    ``even[i]`` is the half-length of the longest even palindrome whose
    right half starts at ``i``.
    """
    n = letters.shape[0]
    odd = np.zeros(n, dtype=np.int64)
    even = np.zeros(n, dtype=np.int64)

    left = 0
    right = -1
    for i in range(n):
        k = 1
        if i <= right:
            k = min(odd[left + right - i], right - i + 1)
        while i - k >= 0 and i + k < n and letters[i - k] == letters[i + k]:
            k += 1
        odd[i] = k
        if i + k - 1 > right:
            left = i - k + 1
            right = i + k - 1

    left = 0
    right = -1
    for i in range(n):
        k = 0
        if i <= right:
            k = min(even[left + right - i + 1], right - i + 1)
        while i - k - 1 >= 0 and i + k < n and letters[i - k - 1] == letters[i + k]:
            k += 1
        even[i] = k
        if i + k - 1 > right:
            left = i - k
            right = i + k - 1

    return odd, even


@njit(nogil=True)
def palindromic_prefix_mask(letters):
    """``mask[m]`` is True iff the prefix of length ``m`` is a palindrome."""
    n = letters.shape[0]
    mask = np.zeros(n + 1, dtype=np.bool_)
    mask[0] = True
    if n == 0:
        return mask
    odd, even = palindromic_radii(letters)
    for m in range(1, n + 1):
        c = m // 2
        if m % 2 == 1:
            mask[m] = odd[c] >= c + 1
        else:
            mask[m] = even[c] >= c
    return mask


@njit(nogil=True)
def border_table(letters):
    """Failure function: ``border[i]`` is the longest proper border of ``letters[:i+1]``."""
    n = letters.shape[0]
    border = np.zeros(n, dtype=np.int64)
    k = 0
    for i in range(1, n):
        while k > 0 and letters[i] != letters[k]:
            k = border[k - 1]
        if letters[i] == letters[k]:
            k += 1
        border[i] = k
    return border


def as_letter_array(letters) -> np.ndarray:
    """Converts a letter sequence into the contiguous int64 array the kernels expect."""
    return np.ascontiguousarray(np.asarray(letters, dtype=np.int64))
