"""
Invoke cli interface when ginigap executed as a script:
```py
python -m ginigap
```
"""
try:
    from .core.cli import cli
except ImportError:
    from ginigap.core.cli import cli


if __name__ == "__main__":
    cli.main()
