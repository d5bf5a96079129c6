from .settings import ConfigManager

__all__ = ["ConfigManager"]
