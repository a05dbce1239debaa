"""应用配置"""
from pydantic import Field
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """应用配置"""
    # 应用配置
    APP_NAME: str = "ascfs"
    DEBUG: bool = False  # 开启后每次构造方块/建造顺序都做不变量自检

    # 日志配置
    LOG_LEVEL: str = "INFO"
    LOG_DIR: Optional[str] = "log"  # 为空则不写日志文件

    # 资源配置
    MEMORY_CAP_BYTES: int = Field(default=2 * 1024 ** 3, gt=0)  # 邻接矩阵位数上限（字节），默认 2 GiB
    ASCFS_THREADS: Optional[int] = Field(default=None, gt=0)  # 并行进程数上限，None 表示 CPU 核数

    # 实验配置
    DEFAULT_TRIALS: int = Field(default=400, gt=0)  # 400 次试验对应 95% 置信度下 ±0.05
    CFS_AS_FASTPATH_DENSITY: float = Field(default=0.5, ge=0.0, le=1.0)  # 边密度超过此值时 CFS 先走 AS 判定
    LEMMA_CROSS_CHECK: bool = True  # 实验中校验 AS ⇒ CFS

    class Config:
        env_file = ".env"
        case_sensitive = True


settings = Settings()
