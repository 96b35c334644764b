"""Main FastAPI application"""

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from pydantic import ValidationError

from flexcolor import __version__
from flexcolor.exceptions import (
    FlexColorError,
    flexcolor_exception_handler,
    general_exception_handler,
    validation_exception_handler,
)
from flexcolor.logging_config import get_logger, setup_logging
from flexcolor.routes import graphs
from flexcolor.settings import load_config

# Initialize logging
settings = load_config()
setup_logging(settings.log_level, json_format=settings.log_json)
logger = get_logger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="flexcolor",
    description="Reducible configurations, discharging and flexible list colorings of triangle-free planar graphs",
    version=__version__,
)

# Add exception handlers
app.add_exception_handler(FlexColorError, flexcolor_exception_handler)
app.add_exception_handler(RequestValidationError, validation_exception_handler)
app.add_exception_handler(ValidationError, validation_exception_handler)
app.add_exception_handler(Exception, general_exception_handler)

# Include routers
app.include_router(graphs.router)


@app.get("/health")
async def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "version": __version__}
