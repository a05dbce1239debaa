"""确定性随机数与种子派生

图生成使用 numpy 的 Philox（基于计数器的生成器），key 直接取 64 位种子，
第 i 个无序点对 (u, v)（按字典序）消耗流中的第 i 个 double，
因此同一种子在任何进程、任何并行度下都得到同一张图。

试验种子由无状态混合函数派生，逐位定义如下（全部为 64 位无符号运算，
M = 2^64 - 1）：

    splitmix64(x):
        x = (x + 0x9E3779B97F4A7C15) & M
        z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & M
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
        return z ^ (z >> 31)

    mix64(w1, ..., wk):
        h = 0
        for w in (w1, ..., wk):
            h = splitmix64(h ^ (w & M))
        return h

    trial_seed(base_seed, n, alpha, t) = mix64(base_seed, n, round(alpha * 10^6), t)
"""
import numpy as np

MASK64 = (1 << 64) - 1
ALPHA_SCALE = 10 ** 6


def splitmix64(x: int) -> int:
    """splitmix64 的单步输出（状态先加黄金比例常数）"""
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix64(*words: int) -> int:
    """把若干 64 位整数混合成一个 64 位种子"""
    h = 0
    for w in words:
        h = splitmix64(h ^ (int(w) & MASK64))
    return h


def alpha_key(alpha: float) -> int:
    """α 在种子里以 round(α·10^6) 出现，避免跨平台浮点标识问题"""
    return int(round(alpha * ALPHA_SCALE))


def trial_seed(base_seed: int, n: int, alpha: float, t: int) -> int:
    """网格单元 (n, α) 中第 t 次试验的种子"""
    return mix64(base_seed, n, alpha_key(alpha), t)


def make_generator(seed: int) -> np.random.Generator:
    """以种子为 Philox key 构造生成器"""
    if not 0 <= seed <= MASK64:
        raise ValueError(f"种子必须是 64 位无符号整数: {seed}")
    return np.random.Generator(np.random.Philox(key=seed))
