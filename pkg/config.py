"""
Configuration settings for permknock
"""
import os
from dotenv import load_dotenv

from solvers.options import SolverOptions

# Load environment variables
load_dotenv()


def _flag(name, default):
    return os.environ.get(name, default).lower() in ['true', 'on', '1']


class Config:
    """Base configuration"""
    DEBUG = False
    TESTING = False

    # Solver defaults
    SOLVER_GRID_SIZE = int(os.environ.get('PERMKNOCK_GRID_SIZE', 100))
    SOLVER_GRID_RATIO = float(os.environ.get('PERMKNOCK_GRID_RATIO', 1e-3))
    SOLVER_TOL = float(os.environ.get('PERMKNOCK_TOL', 1e-9))
    SOLVER_MAX_ITER = int(float(os.environ.get('PERMKNOCK_MAX_ITER', 1e5)))
    SOLVER_ZERO_CLIP = float(os.environ.get('PERMKNOCK_ZERO_CLIP', 1e-8))
    SOLVER_MAX_DEV_RATIO = float(os.environ.get('PERMKNOCK_MAX_DEV_RATIO', 0.999))

    # Cross-validation baseline
    CV_FOLDS = int(os.environ.get('PERMKNOCK_CV_FOLDS', 10))

    # Worker pool for simulations
    WORKERS = int(os.environ.get('PERMKNOCK_WORKERS', 1))

    # Output and logs
    OUTPUT_DIR = os.environ.get('PERMKNOCK_OUTPUT_DIR', 'results')
    LOG_DIR = os.environ.get('PERMKNOCK_LOG_DIR', 'logs')
    LOG_LEVEL = os.environ.get('PERMKNOCK_LOG_LEVEL', 'INFO')
    LOG_TO_FILE = _flag('PERMKNOCK_LOG_TO_FILE', 'true')


class DevelopmentConfig(Config):
    """Development configuration"""
    DEBUG = True


class ProductionConfig(Config):
    """Production configuration"""
    DEBUG = False
    WORKERS = int(os.environ.get('PERMKNOCK_WORKERS', os.cpu_count() or 1))


class TestingConfig(Config):
    """Testing configuration"""
    TESTING = True
    LOG_TO_FILE = False
    WORKERS = 1


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(config_name=None):
    """Configuration class for a name, or for PERMKNOCK_ENV when omitted"""
    if config_name is None:
        config_name = os.environ.get('PERMKNOCK_ENV', 'development')
    try:
        return config[config_name]
    except KeyError:
        raise ValueError(f'unknown configuration {config_name!r} (expected one of {", ".join(config)})') from None


def solver_options_from(config_class, **overrides):
    """SolverOptions from a configuration class, CLI overrides taking precedence"""
    return SolverOptions.from_config(config_class, **overrides)
