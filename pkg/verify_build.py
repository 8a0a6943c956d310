"""Environment verification script for the salemlab project."""

import importlib.util
import os
import sys
from pathlib import Path

REQUIRED_MODULES = [
    ("numpy", "numpy"),
    ("scipy", "scipy"),
    ("pydantic", "pydantic"),
    ("pydantic-settings", "pydantic_settings"),
    ("python-dotenv", "dotenv"),
    ("PyYAML", "yaml"),
    ("psutil", "psutil"),
    ("pytest", "pytest"),
]


def check_python_version():
    """Check if Python version meets the minimum requirement."""
    print("Checking Python version...")
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 9):
        print("❌ Python 3.9 or higher is required")
        return False
    print(f"✅ Python {version.major}.{version.minor}.{version.micro} detected")
    return True


def check_required_files():
    """Check if all required files are present in the project."""
    print("\nChecking required files...")
    required_files = [
        "requirements.txt",
        "pytest.ini",
        "salemlab/__init__.py",
        "salemlab/cli.py",
        "salemlab/core/config.py",
        "config/construct_half.yaml",
    ]

    missing_files = [file for file in required_files if not os.path.exists(file)]
    if missing_files:
        print("❌ Missing required files:")
        for file in missing_files:
            print(f"  - {file}")
        return False

    print("✅ All required files present")
    return True


def check_env_file():
    """The .env file is optional; report which settings source will be used."""
    print("\nChecking .env file...")
    if not os.path.exists(".env"):
        print("ℹ️  No .env file; built-in defaults apply (see .env.example for overrides)")
    else:
        print("✅ .env file present")
    return True


def check_dependencies():
    """Check that every runtime and test dependency is importable."""
    print("\nChecking dependencies...")
    missing = [name for name, module in REQUIRED_MODULES if importlib.util.find_spec(module) is None]
    if missing:
        print("❌ Missing packages (pip install -r requirements.txt):")
        for name in missing:
            print(f"  - {name}")
        return False
    print("✅ All dependencies importable")
    return True


def check_output_dir():
    """Check that the configured output directory can be written."""
    print("\nChecking output directory...")
    out = Path(os.environ.get("SALEMLAB_OUTPUT_DIR", "./outputs"))
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.write_text("ok")
        probe.unlink()
    except OSError as e:
        print(f"❌ Cannot write to {out}: {e}")
        return False
    print(f"✅ {out} is writable")
    return True


def main():
    """Run all environment checks."""
    print("🔍 Starting environment verification...")

    checks = [
        ("Python Version", check_python_version),
        ("Required Files", check_required_files),
        ("Environment File", check_env_file),
        ("Dependencies", check_dependencies),
        ("Output Directory", check_output_dir),
    ]

    all_passed = True
    for check_name, check_func in checks:
        print(f"\n=== Checking {check_name} ===")
        if not check_func():
            all_passed = False

    print("\n=== Environment Summary ===")
    if all_passed:
        print("✅ All checks passed! Run `python -m salemlab --help` to get started.")
    else:
        print("❌ Some checks failed. Please address the issues above.")
        sys.exit(1)


if __name__ == "__main__":
    main()
